"""Bounded-length bursts under the saturation model (thresholds ``1..s``).

* ``N`` (integer code): binary column indices plus an all-ones row.  With
  exact counts the weighted sum of the index rows is the sum of the burst
  positions, which together with the length pins down the head.
* ``C2``: identity blocks of width ``s`` repeated with period
  ``p = ceil(2 ell / s) * s``; gives the length and, for bursts longer than
  ``s``, head and tail modulo ``p``.
* ``C1``: coarse localizer separating bursts whose heads differ by a
  multiple of ``p``.  The default is built from two interleaved block
  partitions; any matrix passing the stacked check can be supplied instead.
"""

from __future__ import annotations

from typing import NamedTuple

import math

import numpy as np

from . import oracle
from .core import Burst, BurstSpace, Scheme, Thresholds, as_binary_matrix, stack
from .errors import InconsistentOutcomeError, ParameterError, UnverifiedConstructionError
from .sketch import VERIFY_CAP


def _index_bits(n: int) -> int:
    return (n - 1).bit_length()


def build_N(n: int) -> np.ndarray:
    """Integer code, shape ``(ceil(log2 n) + 1, n)``; row 0 is the least significant bit."""
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    cols = np.arange(n)
    bits = (cols[None, :] >> np.arange(_index_bits(n))[:, None]) & 1
    return np.vstack([bits, np.ones((1, n), np.int64)]).astype(np.uint8)


def decode_N(outcome, n: int, s: int) -> Burst | None:
    """Burst from exact integer-code counts (valid while lengths stay <= s)."""
    levels = [int(v) for v in np.asarray(outcome).ravel()]
    k_rows = _index_bits(n)
    if len(levels) != k_rows + 1:
        raise InconsistentOutcomeError(f"expected {k_rows + 1} levels, got {len(levels)}")
    length = levels[-1]
    if length == 0:
        if any(levels):
            raise InconsistentOutcomeError(f"zero length with nonzero index levels {levels}")
        return None
    if length > s or any(not 0 <= v <= length for v in levels):
        raise InconsistentOutcomeError(f"levels {levels} are not exact counts of a burst")
    total = sum(v << r for r, v in enumerate(levels[:-1]))
    head, rem = divmod(2 * total - length * (length - 1), 2 * length)
    if rem or head < 0 or head + length > n:
        raise InconsistentOutcomeError(f"levels {levels} do not describe a burst in [0, {n})")
    burst = Burst(head, length)
    if levels != [int(v) for v in build_N(n)[:, head:head + length].sum(axis=1)]:
        raise InconsistentOutcomeError(f"levels {levels} are not produced by burst {tuple(burst)}")
    return burst


def c2_period(ell: int, s: int) -> tuple[int, int]:
    """``(rows, period)`` of the block matrix."""
    t = -(-2 * ell // s)
    return t, t * s


def build_C2(n: int, ell: int, s: int) -> np.ndarray:
    if not 1 <= s < ell <= n:
        raise ParameterError(f"need 1 <= s < ell <= n, got s={s}, ell={ell}, n={n}")
    t, p = c2_period(ell, s)
    block = (np.arange(n) % p) // s
    return (block[None, :] == np.arange(t)[:, None]).astype(np.uint8)


class C2Reading(NamedTuple):
    length: int
    head_mod: int | None
    tail_mod: int | None
    period: int


def decode_C2(outcome, ell: int, s: int) -> C2Reading:
    """Length, and for lengths above ``s`` the head/tail residues mod the period."""
    t, p = c2_period(ell, s)
    levels = [int(v) for v in np.asarray(outcome).ravel()]
    if len(levels) != t or any(not 0 <= v <= s for v in levels):
        raise InconsistentOutcomeError(f"expected {t} levels in [0, {s}], got {levels}")
    length = sum(levels)
    if length == 0:
        return C2Reading(0, None, None, p)
    # the nonzero entries must form one circular run o_h, s, ..., s, o_t
    starts = [i for i in range(t) if levels[i] and not levels[i - 1]]
    if len(starts) != 1:
        raise InconsistentOutcomeError(f"levels {levels} are not a single circular run")
    if length <= s:
        return C2Reading(length, None, None, p)
    first = starts[0]
    run = []
    i = first
    while levels[i]:
        run.append(i)
        i = (i + 1) % t
    if any(levels[j] != s for j in run[1:-1]):
        raise InconsistentOutcomeError(f"levels {levels} have a gap inside the run")
    last = run[-1]
    head_mod = ((first + 1) * s - levels[first]) % p
    tail_mod = (last * s + levels[last] - 1) % p
    return C2Reading(length, head_mod, tail_mod, p)


def build_C1(n: int, ell: int, s: int) -> np.ndarray:
    """Default coarse localizer (may have zero rows).

    Two block partitions of period ``p``, offset by ``ceil(p/2)``; each
    contributes the binary digits of its block index.  Since ``p >= 2 ell``
    every admissible burst lies inside a block of at least one partition,
    where it saturates exactly the rows of that block's set bits.
    """
    if not 1 <= s < ell <= n:
        raise ParameterError(f"need 1 <= s < ell <= n, got s={s}, ell={ell}, n={n}")
    _, p = c2_period(ell, s)
    cols = np.arange(n)
    if n - (s + 1) < p:
        return np.zeros((0, n), np.uint8)
    rows = []
    for offset in (0, p // 2):
        index = (cols + offset) // p
        nbits = int(index[-1]).bit_length()
        rows += [(index >> b) & 1 for b in range(nbits)]
    return np.array(rows, dtype=np.uint8).reshape(len(rows), n)


def build_integer_scheme(n: int, ell: int, s: int | None = None) -> Scheme:
    """Integer code alone; needs ``s >= ell`` so every count is exact."""
    s = ell if s is None else s
    if not 1 <= ell <= n or s < ell:
        raise ParameterError(f"integer code needs 1 <= ell <= n and s >= ell, got ell={ell}, s={s}, n={n}")
    matrix, comps = stack([("integer", build_N(n))])
    report = {"rows": matrix.shape[0], "row_bound": _index_bits(n) + 1}
    return Scheme(matrix, Thresholds.saturation(s), n, BurstSpace.bounded(ell), comps, report=report)


def build_bounded_scheme(n: int, ell: int, s: int, c1=None,
                         verify_cap: int = VERIFY_CAP, jobs: int = 1) -> Scheme:
    """Stack ``C1 / C2 / N`` for bursts of length at most ``ell`` with ``s < ell``."""
    if not 1 <= s < ell <= n:
        raise ParameterError(f"need 1 <= s < ell <= n, got s={s}, ell={ell}, n={n}")
    if c1 is None:
        C1 = build_C1(n, ell, s)
    else:
        C1 = as_binary_matrix(c1, allow_empty=True)
        if C1.shape[1] != n:
            raise ParameterError(f"supplied phase-1 matrix has {C1.shape[1]} columns, expected {n}")
    C2 = build_C2(n, ell, s)
    N = build_N(n)
    matrix, comps = stack([("phase1", C1), ("phase2", C2), ("integer", N)])
    eta = Thresholds.saturation(s)
    space = BurstSpace.bounded(ell)
    reference_bound = 2 * ell / s + 2 * math.log2(n) + 3
    target_c1 = _index_bits(n) + 1
    verify = n <= verify_cap
    report = {
        "rows": matrix.shape[0],
        "phase1_rows": C1.shape[0],
        "phase1_target": target_c1,
        "phase1_deviation": C1.shape[0] > target_c1,
        "reference_bound": reference_bound,
        "exceeds_reference_bound": matrix.shape[0] > reference_bound,
        "phase1_source": "default" if c1 is None else "supplied",
        "verified": verify,
    }
    if verify:
        witness = oracle.check_distinguishable(matrix, eta, space, jobs=jobs)
        if witness is not None:
            raise UnverifiedConstructionError(f"bounded scheme is not injective: {witness}", witness)
    return Scheme(matrix, eta, n, space, comps, report=report)


def decode_bounded(scheme: Scheme, outcome) -> Burst | None:
    """Length from C2; short bursts via the integer code, long ones by
    filtering heads with the right residue against the full outcome.
    """
    levels = np.asarray(outcome, dtype=np.int64).ravel()
    if levels.size != scheme.rows:
        raise InconsistentOutcomeError(f"expected {scheme.rows} levels, got {levels.size}")
    s, ell, n = scheme.thresholds.s, scheme.ell, scheme.n
    integer = scheme.component("integer")
    if not scheme.has("phase2"):
        burst = decode_N(levels[integer.start:integer.stop], n, s)
        return _confirm(scheme, burst, levels)
    phase2 = scheme.component("phase2")
    reading = decode_C2(levels[phase2.start:phase2.stop], ell, s)
    if reading.length == 0:
        if levels.any():
            raise InconsistentOutcomeError(f"outcome {levels.tolist()} has no positives in phase 2 but is nonzero")
        return None
    if reading.length > ell:
        raise InconsistentOutcomeError(f"decoded length {reading.length} exceeds ell={ell}")
    if reading.length <= s:
        burst = decode_N(levels[integer.start:integer.stop], n, s)
        return _confirm(scheme, burst, levels)
    length, p = reading.length, reading.period
    if (reading.head_mod + length - 1) % p != reading.tail_mod:
        raise InconsistentOutcomeError("head and tail residues disagree with the length")
    matches = [
        Burst(head, length)
        for head in range(reading.head_mod, n - length + 1, p)
        if np.array_equal(scheme.outcome((head, length)), levels)
    ]
    if len(matches) != 1:
        raise InconsistentOutcomeError(f"{len(matches)} bursts are consistent with {levels.tolist()}")
    return matches[0]


def _confirm(scheme, burst, levels):
    if burst is None and not levels.any():
        return None
    if burst is None or not np.array_equal(scheme.outcome(burst), levels):
        raise InconsistentOutcomeError(f"outcome {levels.tolist()} is not produced by any burst")
    return burst
