import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_collisions
from sqgt_burst import (
    AllPairs,
    Burst,
    BurstSpace,
    CollisionError,
    FarApart,
    Near,
    Scheme,
    build_B,
    build_fixed_scheme,
    build_integer_scheme,
    build_lookup,
    build_R,
    check_distinguishable,
    counting_bound,
    decode,
    efficiency_report,
)
from sqgt_burst.oracle import ceil_log, parse_predicate


def test_check_examples():
    assert check_distinguishable(np.eye(3), (1,), BurstSpace.fixed(1)) is None
    w = check_distinguishable(np.ones((1, 4)), (1,), BurstSpace.fixed(1))
    assert (w.burst_a, w.burst_b, w.outcome) == (Burst(0, 1), Burst(1, 1), (1,))
    assert str(w) == "head 0 len 1 and head 1 len 1 share outcome [1]"


def test_refinement_near_predicate():
    R = build_R(build_B(2, 7), (1, 2, 4), 4 * 29)
    assert check_distinguishable(R, (1, 2, 4), BurstSpace.fixed(29), Near(58)) is None
    assert check_distinguishable(R, (1, 2, 4), BurstSpace.fixed(29)) is not None


def test_predicates():
    a, b = Burst(0, 3), Burst(5, 3)
    assert AllPairs()(a, b)
    assert FarApart(5)(a, b) and not FarApart(6)(a, b)
    assert Near(6)(a, b) and not Near(5)(a, b)
    assert str(parse_predicate("far:7")) == "far:7"
    assert str(parse_predicate("near:3")) == "near:3"
    assert isinstance(parse_predicate("all"), AllPairs)
    for bad in ("far", "near:x", "bogus", "far:-1"):
        with pytest.raises(ValueError):
            parse_predicate(bad)


@settings(max_examples=80)
@given(st.integers(1, 4), st.integers(2, 12), st.data())
def test_witness_agrees_with_naive_search(rows, n, data):
    ell = data.draw(st.integers(1, n))
    kind = data.draw(st.sampled_from(["fixed", "bounded"]))
    eta = tuple(sorted(data.draw(st.sets(st.integers(1, 4), min_size=1, max_size=3))))
    d = data.draw(st.integers(0, n))
    pred = data.draw(st.sampled_from([AllPairs(), FarApart(d), Near(d)]))
    bits = data.draw(st.lists(st.integers(0, 1), min_size=rows * n, max_size=rows * n))
    M = np.array(bits, np.uint8).reshape(rows, n)
    order = {b: k for k, b in enumerate(
        [(h, L) for L in ([ell] if kind == "fixed" else range(1, ell + 1)) for h in range(n - L + 1)])}
    pairs = naive_collisions(M, eta, n, ell, kind, lambda a, b: pred(Burst(*a), Burst(*b)))
    w = check_distinguishable(M, eta, BurstSpace(kind, ell), pred)
    if not pairs:
        assert w is None
    else:
        least = min(pairs, key=lambda p: (order[p[0]], order[p[1]]))
        assert (tuple(w.burst_a), tuple(w.burst_b)) == least


def test_jobs_do_not_change_witness(rng):
    M = rng.integers(0, 2, size=(3, 300), dtype=np.uint8)
    space = BurstSpace.bounded(5)
    ref = check_distinguishable(M, (1, 2), space)
    for jobs in (2, 3, 8):
        assert check_distinguishable(M, (1, 2), space, jobs=jobs) == ref


@pytest.mark.parametrize("base, x, want", [(4, 51, 3), (9, 36, 2), (2, 1, 0), (3, 82, 5), (4, 64, 3), (4, 65, 4)])
def test_ceil_log_exact(base, x, want):
    assert ceil_log(base, x) == want


def test_counting_bound_examples():
    b = counting_bound(56, 6, 3)
    assert (b.bursts, b.min_tests) == (51, 3)
    b = counting_bound(8, 8, 8, "bounded")
    assert (b.bursts, b.min_tests) == (36, 2)
    assert b.sketch_bound is None
    b = counting_bound(6, 6, 3)
    assert (b.bursts, b.min_tests) == (1, 0)


def test_lookup_decoder_integer_code():
    scheme = build_integer_scheme(8, 8)
    table = build_lookup(scheme)
    assert len(table) == 36
    for L in range(1, 9):
        for h in range(9 - L):
            assert table.decode(scheme.outcome((h, L))) == Burst(h, L)
    assert table.decode([0] * scheme.rows) is None


def test_lookup_rejects_collisions():
    M = np.array([[1, 1, 0], [0, 0, 1]], np.uint8)
    scheme = Scheme(M, (1,), 3, BurstSpace.fixed(1), (("sketch", 0, 2),))
    with pytest.raises(CollisionError) as info:
        build_lookup(scheme)
    assert info.value.witness.burst_a == Burst(0, 1)


def test_decode_dispatch_falls_back_to_lookup():
    scheme = Scheme(np.eye(4, dtype=np.uint8), (1,), 4, BurstSpace.fixed(1), (("sketch", 0, 4),))
    assert decode(scheme, [0, 0, 1, 0]) == Burst(2, 1)
    assert decode(scheme, [0, 0, 0, 0]) is None


def test_efficiency_reports():
    rep = efficiency_report(build_integer_scheme(256, 8))
    assert rep["rows"] == rep["formula_rows"] == 9
    rep = efficiency_report(build_fixed_scheme(2048, 2, 7, (1, 2, 4)))
    assert rep["rows"] == 11 and rep["within_formula"]
    assert rep["formula_rows"] == 8 + 4 + 1
    rep = efficiency_report(build_integer_scheme(4, 4))
    assert rep["min_tests"] >= 1 or rep["ratio"] == rep["rows"]
