import numpy as np
import pytest

from conftest import naive_collisions
from sqgt_burst import (
    Burst,
    InconsistentOutcomeError,
    ParameterError,
    UnverifiedConstructionError,
    build_B,
    build_fixed_scheme,
    build_R,
    check_B,
    decode_fixed,
    decode_R,
    runs_of_ones,
)
from sqgt_burst.golden import BASE_MATRIX_H2_C7
from sqgt_burst.refine import refine_threshold


def test_base_matrix_matches_worked_example():
    B = build_B(2, 7)
    assert B.shape == (7, 29)
    assert ["".join(map(str, r)) for r in B] == list(BASE_MATRIX_H2_C7)
    assert "".join(map(str, B[0])) == "0" "0011" "0110" "0000" "0000" "0000" "0000" "1111"
    assert "".join(map(str, B[6])) == "0" "1111" "0011" "0110" "0000" "0000" "0000" "0000"
    assert not B[:, 0].any()
    assert all(runs_of_ones(r) == 3 for r in B)
    assert check_B(B, 4).ok


@pytest.mark.parametrize("h, c", [(1, 5), (2, 7), (2, 9), (3, 9), (3, 12), (4, 11)])
def test_base_matrix_conditions(h, c):
    B = build_B(h, c)
    assert B.shape == (c, c * 2 ** h + 1)
    eta_s = refine_threshold(h)
    assert check_B(B, eta_s).ok
    cols = {tuple(col) for col in B.T.tolist()} | {tuple(col) for col in (1 - B.T.astype(int)).tolist()}
    assert len(cols) == 2 * B.shape[1]
    # past the zero column, row i is row 0 shifted left by i blocks
    body = B[:, 1:]
    for i in range(c):
        assert np.array_equal(body[i], np.roll(body[0], -i * 2 ** h))


def test_check_B_planted_defects():
    B = build_B(2, 7).copy()
    B[:, 5] = B[:, 4]
    report = check_B(B, 4)
    assert not report.c1.passed and report.c1.witness == (4, 5)
    B = build_B(2, 7).copy()
    B[3, 0] = 1
    report = check_B(B, 4)
    assert not report.c2.passed and report.c2.witness == (3,)
    assert not check_B(build_B(2, 7), 5).c3.passed


@pytest.mark.parametrize("h, c", [(2, 6), (3, 8), (0, 9)])
def test_build_B_enforces_strict_row_constraint(h, c):
    with pytest.raises(ParameterError):
        build_B(h, c)


@pytest.mark.parametrize("h, c", [(2, 7), (2, 8), (3, 9)])
def test_refinement_counts_follow_base_matrix(h, c):
    B = build_B(h, c).astype(int)
    ell = B.shape[1]
    eta_s = refine_threshold(h)
    n = 4 * ell
    R = build_R(B, (1, 2, eta_s), n)
    for head in range(n - ell + 1):
        counts = R[:, head:head + ell].sum(axis=1)
        r = head % (2 * ell)
        want = eta_s - 1 + B[:, r] if r < ell else eta_s - B[:, r - ell]
        assert counts.tolist() == want.tolist()


def test_refinement_extreme_heads():
    B = build_B(2, 7)
    R = build_R(B, (1, 2, 4), 200)
    assert (R[:, 0:29].sum(axis=1) == 3).all()
    assert (R[:, 29:58].sum(axis=1) == 4).all()


def test_build_R_rejects_mismatched_threshold():
    with pytest.raises(ParameterError):
        build_R(build_B(2, 7), (1, 2, 5), 100)


def test_refinement_separates_near_heads():
    B = build_B(2, 7)
    n = 4 * 29
    R = build_R(B, (1, 2, 4), n)
    near = lambda a, b: abs(a[0] - b[0]) < 58
    assert naive_collisions(R, (1, 2, 4), n, 29, "fixed", near) == []
    assert naive_collisions(R, (4,), n, 29, "fixed", near) == []


def test_decode_R_round_trip():
    B = build_B(2, 7)
    R = build_R(B, (1, 2, 4), 2 * 58 + 28)
    for head in range(2 * 58):
        counts = R[:, head:head + 29].sum(axis=1)
        levels = np.searchsorted([1, 2, 4], counts, side="right")
        assert decode_R(B, (1, 2, 4), levels) == head % 58
    assert decode_R(B, (1, 2, 4), [2] * 7) == 0
    assert decode_R(B, (1, 2, 4), [3] * 7) == 29


def test_decode_R_rejects_bad_levels():
    B = build_B(2, 7)
    with pytest.raises(InconsistentOutcomeError):
        decode_R(B, (1, 2, 4), [0] + [2] * 6)
    with pytest.raises(InconsistentOutcomeError):
        decode_R(B, (1, 2, 4), [2] * 6)


def test_fixed_scheme_small():
    n = 300
    scheme = build_fixed_scheme(n, 2, 7, (1, 2, 4))
    assert scheme.ell == 29
    assert scheme.component("refine").rows == 7
    assert naive_collisions(scheme.matrix, (1, 2, 4), n, 29, "fixed") == []
    for head in range(n - 28):
        assert decode_fixed(scheme, scheme.outcome((head, 29))) == Burst(head, 29)


def test_fixed_scheme_rows_at_2048():
    scheme = build_fixed_scheme(2048, 2, 7, (1, 2, 4))
    assert scheme.component("sketch").rows == 4
    assert scheme.rows == 11


def test_fixed_scheme_degenerate_single_head():
    scheme = build_fixed_scheme(29, 2, 7, (1, 2, 4))
    assert decode_fixed(scheme, scheme.outcome((0, 29))) == Burst(0, 29)


def test_fixed_scheme_parameter_checks():
    with pytest.raises(ParameterError):
        build_fixed_scheme(100, 2, 7, (1, 2, 3))
    with pytest.raises(ParameterError):
        build_fixed_scheme(20, 2, 7, (1, 2, 4))


def test_decode_fixed_rejects_corrupted_refine_level():
    scheme = build_fixed_scheme(300, 2, 7, (1, 2, 4))
    levels = scheme.outcome((100, 29)).copy()
    levels[scheme.component("refine").start] = 0
    with pytest.raises(InconsistentOutcomeError):
        decode_fixed(scheme, levels)


def test_unverified_error_carries_witness():
    err = UnverifiedConstructionError("x", witness=(1, 2))
    assert err.witness == (1, 2)
