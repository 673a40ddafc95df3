"""Worked examples with known answers, run by ``sqgt-burst selftest``."""

from __future__ import annotations

import numpy as np

from .bounded import build_C2, build_N, decode_C2, decode_N
from .core import Burst, BurstSpace, outcome_matrix
from .gray import gray_matrix, paired_gray_matrix, runs_of_ones
from .refine import build_B, check_B
from .sketch import m_pattern

STAIRCASE_6_124 = (
    "000000" "0000001" "0000011" "0001111"
    "1111111" "1111000" "1100000" "1000000" "0"
)

BASE_MATRIX_H2_C7 = (
    "00011011000000000000000001111",
    "00110000000000000000011110011",
    "00000000000000000111100110110",
    "00000000000001111001101100000",
    "00000000011110011011000000000",
    "00000111100110110000000000000",
    "01111001101100000000000000000",
)

INTEGER_CODE_8 = ((0, 1, 0, 1, 0, 1, 0, 1),
                  (0, 0, 1, 1, 0, 0, 1, 1),
                  (0, 0, 0, 0, 1, 1, 1, 1),
                  (1, 1, 1, 1, 1, 1, 1, 1))


def _bits(s):
    return np.array([int(ch) for ch in s], np.uint8)


def staircase_row():
    return "".join(map(str, m_pattern(6, (1, 2, 4), 1, 56))) == STAIRCASE_6_124


def staircase_outcome():
    row = m_pattern(6, (1, 2, 4), 1, 56)
    got = outcome_matrix(row, (1, 2, 4), BurstSpace.fixed(6))[0]
    want = np.repeat([0, 1, 2, 3, 3, 2, 1, 0], 7)[:51]
    return np.array_equal(got, want)


def base_matrix_example():
    B = build_B(2, 7)
    want = np.array([_bits(r) for r in BASE_MATRIX_H2_C7])
    return np.array_equal(B, want) and check_B(B, 4).ok


def base_matrix_runs():
    return all(runs_of_ones(r) == 3 for r in build_B(2, 7))


def integer_code_example():
    return np.array_equal(build_N(8), np.array(INTEGER_CODE_8))


def integer_decode_example():
    return decode_N([1, 2, 1, 3], 8, 3) == Burst(2, 3) and decode_N([0, 0, 0, 0], 8, 3) is None


def block_matrix_example():
    C2 = build_C2(16, 4, 2)
    reading = decode_C2([2, 0, 0, 1], 4, 2)
    return (np.flatnonzero(C2[0]).tolist() == [0, 1, 8, 9]
            and (reading.length, reading.head_mod, reading.tail_mod) == (3, 7, 1))


def gray_examples():
    return (gray_matrix(2, 2).T.tolist() == [[0, 0], [0, 1], [1, 1], [1, 0]]
            and paired_gray_matrix(3, 1)[0].tolist() == [0, 1, 2, 2, 1, 0])


CHECKS = {
    "staircase row (ell=6, eta=1,2,4)": staircase_row,
    "staircase outcome plateaus": staircase_outcome,
    "base matrix h=2 c=7 and conditions": base_matrix_example,
    "base matrix runs of ones": base_matrix_runs,
    "integer code n=8": integer_code_example,
    "integer code decoding": integer_decode_example,
    "block matrix residues": block_matrix_example,
    "gray and paired gray codes": gray_examples,
}


def run_golden(out=print) -> bool:
    ok = True
    for name, check in CHECKS.items():
        try:
            passed = bool(check())
        except Exception as exc:  # report and keep going
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        out(f"{'PASS' if passed else 'FAIL'} {name}")
        ok &= passed
    return ok
