"""q-ary reflected Gray codes and paired (palindromic) Gray codes.

Codes are returned as digit matrices with one codeword per column and row 0
holding the slowest-varying digit.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

MAX_CODEWORDS = 1 << 24


def _check(q, h, factor=1):
    if q < 2 or h < 1:
        raise ParameterError(f"need q >= 2 and h >= 1, got q={q}, h={h}")
    if factor * q**h > MAX_CODEWORDS:
        raise ParameterError(f"{factor}*{q}^{h} columns exceeds the size cap {MAX_CODEWORDS}")


def gray_matrix(q: int, h: int) -> np.ndarray:
    """Reflected q-ary Gray code of length ``h``, shape ``(h, q**h)``."""
    _check(q, h)
    code = np.arange(q, dtype=np.int64)[None, :]
    for _ in range(h - 1):
        width = code.shape[1]
        top = np.repeat(np.arange(q), width)[None, :]
        lower = np.concatenate([code if d % 2 == 0 else code[:, ::-1] for d in range(q)], axis=1)
        code = np.vstack([top, lower])
    return code


def paired_gray_matrix(q: int, h: int) -> np.ndarray:
    """Paired Gray code, shape ``(h, 2 * q**h)``.

    Each digit vector appears twice; the second half mirrors the first, which
    is the reflected Gray code.
    """
    _check(q, h, factor=2)
    base = np.concatenate([np.arange(q), np.arange(q)[::-1]])
    code = base[None, :]
    for i in range(2, h + 1):
        top = np.repeat(base, q ** (i - 1))[None, :]
        code = np.vstack([top, np.tile(code, q)])
    return code


def gray_index(q: int, column) -> int:
    """Position of ``column`` within ``gray_matrix(q, len(column))``."""
    digits = [int(d) for d in column]
    if q < 2 or not digits:
        raise ParameterError("need q >= 2 and a non-empty column")
    if any(not 0 <= d < q for d in digits):
        raise ParameterError(f"digits of {tuple(digits)} must lie in [0, {q - 1}]")
    rank, flip = 0, False
    for d in digits:
        rank = rank * q + (q - 1 - d if flip else d)
        # odd-digit blocks hold the mirrored lower code
        flip ^= d % 2 == 1
    return rank


def runs_of_ones(row) -> int:
    """Number of maximal blocks of consecutive ones (non-cyclic)."""
    row = np.asarray(row, dtype=np.int64).ravel()
    if row.size == 0:
        return 0
    starts = (row[1:] == 1) & (row[:-1] == 0)
    return int(starts.sum() + (row[0] == 1))
