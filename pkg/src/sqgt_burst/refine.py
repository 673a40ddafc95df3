"""The refinement matrix R and the stacked fixed-length scheme.

R is periodic with period ``2 * ell`` and is derived from a base matrix B
whose columns (and their complements) are all distinct.  The raw counts of
R on a burst at head ``i`` equal ``eta_s - 1 + B[:, i]`` for the first
``ell`` residues and ``eta_s - B[:, i - ell]`` for the next ``ell``, so the
residue ``i mod 2 ell`` can be read off from the largest threshold alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .core import Burst, BurstSpace, Scheme, as_thresholds, stack
from .errors import InconsistentOutcomeError, ParameterError, UnverifiedConstructionError
from .gray import gray_matrix
from .sketch import VERIFY_CAP, _periodic, build_K, decode_K


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class BConditions:
    c1: ConditionResult
    c2: ConditionResult
    c3: ConditionResult

    @property
    def ok(self) -> bool:
        return self.c1.passed and self.c2.passed and self.c3.passed

    def failures(self) -> list[ConditionResult]:
        return [c for c in (self.c1, self.c2, self.c3) if not c.passed]


def check_B(B, eta_s: int) -> BConditions:
    """Check the three conditions that make the derived R work.

    C1: columns and their complements are pairwise distinct (witness: the two
    column indices, ``i + ell`` standing for the complement of column ``i``).
    C2: column 0 is zero (witness: nonzero row indices).
    C3: every row has ``eta_s - 1`` cyclic 1->0 drops (witness: row, count).
    """
    B = np.asarray(B, dtype=np.int64)
    seen, c1 = {}, ConditionResult("C1", True)
    for idx, col in enumerate(list(B.T) + list(1 - B.T)):
        key = col.tobytes()
        if key in seen:
            c1 = ConditionResult("C1", False, (seen[key], idx))
            break
        seen[key] = idx
    nonzero = np.flatnonzero(B[:, 0])
    c2 = ConditionResult("C2", nonzero.size == 0, tuple(nonzero.tolist()) or None)
    drops = (np.roll(B, -1, axis=1) - B == -1).sum(axis=1)
    bad = np.flatnonzero(drops != eta_s - 1)
    c3 = ConditionResult("C3", bad.size == 0,
                         (int(bad[0]), int(drops[bad[0]])) if bad.size else None)
    return BConditions(c1, c2, c3)


def refine_threshold(h: int) -> int:
    """Largest threshold matched to Gray length ``h``: ``2^(h-1) + 2``."""
    return 2 ** (h - 1) + 2


def build_B(h: int, c: int) -> np.ndarray:
    """Base matrix with ``c`` rows and ``c * 2^h + 1`` columns.

    A zero column followed by ``c`` blocks of width ``2^h``; the block for
    row ``i`` (placed right to left) puts ones on row ``i`` and the rows of
    the binary Gray code on rows ``i+1, ..., i+h`` taken cyclically.
    """
    if h < 1 or c <= 2 * (h + 1):
        raise ParameterError(f"need h >= 1 and c > 2(h+1), got h={h}, c={c}")
    width = 2 ** h
    gray = gray_matrix(2, h)
    B = np.zeros((c, c * width + 1), np.uint8)
    for i in range(c):
        col = 1 + (c - 1 - i) * width
        B[i, col:col + width] = 1
        for k in range(h):
            B[(i + 1 + k) % c, col:col + width] = gray[k]
    report = check_B(B, refine_threshold(h))
    if not report.ok:
        bad = report.failures()[0]
        raise UnverifiedConstructionError(f"B(h={h}, c={c}) violates {bad.name}: {bad.witness}", bad)
    return B


def build_R(B, eta, n: int) -> np.ndarray:
    """Periodic refinement matrix ``[R- R+ R- R+ ...]`` truncated to ``n`` columns."""
    eta = as_thresholds(eta)
    B = np.asarray(B, dtype=np.int64)
    diff = np.roll(B, -1, axis=1) - B
    drops = set((diff == -1).sum(axis=1).tolist())
    if drops != {eta.largest - 1}:
        raise ParameterError(
            f"B rows have {sorted(drops)} runs of ones, largest threshold {eta.largest} needs {eta.largest - 1}"
        )
    minus = (diff == -1).astype(np.uint8)
    plus = (diff == 1).astype(np.uint8)
    plus[:, -1] = 1
    return _periodic(np.hstack([minus, plus]), n)


def decode_R(B, eta, outcome) -> int:
    """Residue ``head mod 2 ell`` from the refinement rows' outcome."""
    eta = as_thresholds(eta)
    B = np.asarray(B, dtype=np.uint8)
    levels = np.asarray(outcome, dtype=np.int64).ravel()
    s = eta.s
    if levels.size != B.shape[0]:
        raise InconsistentOutcomeError(f"expected {B.shape[0]} refine levels, got {levels.size}")
    if not np.isin(levels, (s - 1, s)).all():
        raise InconsistentOutcomeError(f"refine levels {levels.tolist()} must lie in {{{s - 1}, {s}}}")
    bits = (levels == s).astype(np.uint8)
    match = np.flatnonzero((B.T == bits).all(axis=1))
    if match.size:
        return int(match[0])
    match = np.flatnonzero((B.T == 1 - bits).all(axis=1))
    if match.size:
        return int(match[0]) + B.shape[1]
    raise InconsistentOutcomeError(f"refine levels {levels.tolist()} match no column of B")


def build_fixed_scheme(n: int, h: int, c: int, eta, verify_cap: int = VERIFY_CAP, jobs: int = 1) -> Scheme:
    """Sketch rows stacked over refinement rows; identifies every head.

    ``ell = c * 2^h + 1`` and the largest threshold must be ``2^(h-1) + 2``.
    """
    eta = as_thresholds(eta)
    if eta.largest != refine_threshold(h):
        raise ParameterError(f"largest threshold must be {refine_threshold(h)} for h={h}, got {eta.largest}")
    ell = c * 2 ** h + 1
    if ell > n:
        raise ParameterError(f"ell={ell} exceeds n={n}")
    B = build_B(h, c)
    sketch = build_K(n, ell, eta, verify_cap=verify_cap, jobs=jobs)
    R = build_R(B, eta, n)
    matrix, comps = stack([("sketch", sketch.matrix), ("refine", R)])
    verify = n <= verify_cap
    report = {"h": h, "c": c, "ell": ell, "sketch": sketch.report, "verified": verify}
    scheme = Scheme(matrix, eta, n, BurstSpace.fixed(ell), comps, report=report)
    report["row_bound"] = oracle.formula_rows(scheme)
    if verify:
        witness = oracle.check_distinguishable(matrix, eta, scheme.space, jobs=jobs)
        if witness is not None:
            raise UnverifiedConstructionError(f"fixed scheme is not injective: {witness}", witness)
    scheme._cache["B"] = B
    return scheme


def base_matrix(scheme: Scheme) -> np.ndarray:
    """Recover B for a fixed scheme from ``ell`` and the refine row count."""
    if "B" not in scheme._cache:
        c = scheme.component("refine").rows
        ell = scheme.ell
        width, rem = divmod(ell - 1, c) if c else (0, 1)
        h = width.bit_length() - 1
        if rem or width < 2 or 2 ** h != width:
            raise ParameterError(f"refine block with {c} rows does not match ell={ell}")
        B = build_B(h, c)
        R = build_R(B, scheme.thresholds, scheme.n)
        if not np.array_equal(R, scheme.rows_of("refine")):
            raise ParameterError("refine rows differ from the standard construction")
        scheme._cache["B"] = B
    return scheme._cache["B"]


def decode_fixed(scheme: Scheme, outcome) -> Burst:
    """Head from the sketch window intersected with the refinement residue."""
    levels = np.asarray(outcome, dtype=np.int64).ravel()
    if levels.size != scheme.rows:
        raise InconsistentOutcomeError(f"expected {scheme.rows} levels, got {levels.size}")
    ell = scheme.ell
    window = decode_K(scheme, levels)
    ref = scheme.component("refine")
    residue = decode_R(base_matrix(scheme), scheme.thresholds, levels[ref.start:ref.stop])
    heads = [x for x in window if x % (2 * ell) == residue]
    if len(heads) != 1:
        raise InconsistentOutcomeError(
            f"sketch window {window.start}..{window.stop - 1} and residue {residue} give {len(heads)} heads"
        )
    burst = Burst(heads[0], ell)
    if not np.array_equal(scheme.outcome(burst), levels):
        raise InconsistentOutcomeError(f"outcome {levels.tolist()} is not produced by any burst")
    return burst
