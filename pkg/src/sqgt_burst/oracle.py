"""Ground truth: exhaustive distinguishability checks, counting bounds and
a reference lookup decoder.

Verification groups bursts by outcome and applies the pair predicate only
inside each collision class, so the cost is dominated by computing the
outcome matrix once.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    Burst,
    BurstSpace,
    Scheme,
    as_binary_matrix,
    as_thresholds,
    enumerate_bursts,
    quantize,
    window_counts,
)
from .errors import CollisionError, InconsistentOutcomeError, ParameterError


@dataclass(frozen=True)
class AllPairs:
    def __call__(self, a: Burst, b: Burst) -> bool:
        return True

    def __str__(self):
        return "all"


@dataclass(frozen=True)
class FarApart:
    """Pairs whose heads are at least ``distance`` apart."""

    distance: int

    def __call__(self, a: Burst, b: Burst) -> bool:
        return abs(a.head - b.head) >= self.distance

    def __str__(self):
        return f"far:{self.distance}"


@dataclass(frozen=True)
class Near:
    """Pairs whose heads are fewer than ``distance`` apart."""

    distance: int

    def __call__(self, a: Burst, b: Burst) -> bool:
        return abs(a.head - b.head) < self.distance

    def __str__(self):
        return f"near:{self.distance}"


def parse_predicate(text: str):
    """Parse ``all``, ``far:D`` or ``near:D``."""
    text = text.strip()
    if text == "all":
        return AllPairs()
    kind, _, dist = text.partition(":")
    try:
        d = int(dist)
    except ValueError:
        raise ParameterError(f"bad predicate {text!r}") from None
    if d < 0:
        raise ParameterError(f"predicate distance must be >= 0, got {d}")
    if kind == "far":
        return FarApart(d)
    if kind == "near":
        return Near(d)
    raise ParameterError(f"bad predicate {text!r}")


@dataclass(frozen=True)
class CollisionWitness:
    """Two distinct bursts with the same outcome (least such pair)."""

    burst_a: Burst
    burst_b: Burst
    outcome: tuple[int, ...]

    def __str__(self):
        a, b = self.burst_a, self.burst_b
        levels = " ".join(map(str, self.outcome))
        return (f"head {a.head} len {a.length} and head {b.head} len {b.length}"
                f" share outcome [{levels}]")


def all_outcomes(M, eta, space: BurstSpace, jobs: int = 1) -> np.ndarray:
    """Outcome matrix computed over ``jobs`` chunks of the burst list."""
    M = as_binary_matrix(M, allow_empty=True)
    eta = as_thresholds(eta)
    heads, lengths = space.arrays(M.shape[1])
    jobs = max(1, int(jobs))
    if jobs == 1 or len(heads) < 2 * jobs:
        return quantize(window_counts(M, heads, lengths), eta)
    bounds = np.linspace(0, len(heads), jobs + 1).astype(int)

    def work(k):
        sl = slice(bounds[k], bounds[k + 1])
        return quantize(window_counts(M, heads[sl], lengths[sl]), eta)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(work, range(jobs)))
    return np.concatenate(parts, axis=1)


def outcome_classes(O: np.ndarray) -> list[np.ndarray]:
    """Burst-index groups (ascending) sharing an outcome column, size >= 2 only."""
    count = O.shape[1]
    if O.shape[0] == 0:
        inverse = np.zeros(count, dtype=np.int64)
    else:
        _, inverse = np.unique(O.T, axis=0, return_inverse=True)
        inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    cuts = np.flatnonzero(np.diff(inverse[order])) + 1
    return [g for g in np.split(order, cuts) if len(g) > 1]


def check_distinguishable(M, eta, space: BurstSpace, predicate=None, jobs: int = 1):
    """Return ``None`` if every predicate-related pair of bursts is separated,
    otherwise the canonical :class:`CollisionWitness`.
    """
    predicate = predicate or AllPairs()
    M = as_binary_matrix(M, allow_empty=True)
    O = all_outcomes(M, eta, space, jobs=jobs)
    bursts = enumerate_bursts(M.shape[1], space)
    best = None
    for group in outcome_classes(O):
        found = _least_pair(group, bursts, predicate)
        if found is not None and (best is None or found < best):
            best = found
    if best is None:
        return None
    i, j = best
    return CollisionWitness(bursts[i], bursts[j], tuple(int(v) for v in O[:, i]))


def _least_pair(group, bursts, predicate):
    for x, i in enumerate(group):
        for j in group[x + 1:]:
            if predicate(bursts[i], bursts[j]):
                return (int(i), int(j))
    return None


def ceil_log(base: int, x) -> int:
    """Smallest ``t >= 0`` with ``base**t >= x`` (exact for rationals)."""
    t, power = 0, 1
    while power < x:
        power *= base
        t += 1
    return t


@dataclass(frozen=True)
class CountingBound:
    bursts: int
    min_tests: int
    sketch_bound: float | None


def counting_bound(n: int, ell: int, s: int, mode: str = "fixed") -> CountingBound:
    """Information-theoretic minimum number of (s+1)-ary tests."""
    space = BurstSpace(mode, ell)
    bursts = space.count(n)
    sketch = None
    if mode == "fixed":
        sketch = math.log((n - ell + 1) / ell, s + 1)
    return CountingBound(bursts, ceil_log(s + 1, bursts), sketch)


class LookupDecoder:
    """Outcome -> burst table over the whole burst space of a scheme."""

    def __init__(self, scheme: Scheme, table: dict):
        self.scheme = scheme
        self.table = table

    def __len__(self):
        return len(self.table)

    def decode(self, outcome) -> Burst | None:
        key = tuple(int(v) for v in outcome)
        if len(key) != self.scheme.rows:
            raise InconsistentOutcomeError(f"expected {self.scheme.rows} levels, got {len(key)}")
        if key in self.table:
            return self.table[key]
        if not any(key):
            return None
        raise InconsistentOutcomeError(f"outcome {key} is not produced by any burst")


def build_lookup(scheme: Scheme, jobs: int = 1) -> LookupDecoder:
    O = all_outcomes(scheme.matrix, scheme.thresholds, scheme.space, jobs=jobs)
    bursts = enumerate_bursts(scheme.n, scheme.space)
    table = {}
    for k, b in enumerate(bursts):
        key = tuple(int(v) for v in O[:, k])
        if key in table:
            witness = check_distinguishable(scheme.matrix, scheme.thresholds, scheme.space)
            raise CollisionError(f"scheme is not injective: {witness}", witness)
        table[key] = b
    return LookupDecoder(scheme, table)


def formula_rows(scheme: Scheme):
    """Row count promised by the explicit construction formula, if one applies."""
    n, ell = scheme.n, scheme.ell
    eta = scheme.thresholds
    s = eta.s
    if scheme.space.kind == "fixed":
        sketch = ceil_log(s + 1, Fraction(n - ell + 1, ell))
        if scheme.has("refine"):
            return math.ceil(ell / (2 * eta.largest - 4)) + sketch + 1
        if eta.is_saturation and s == ell:
            return ceil_log(ell + 1, n - ell + 1)
        return sketch
    if scheme.has("phase2"):
        return 2 * ell / s + 2 * math.log2(n) + 3
    return ceil_log(2, n) + 1


def efficiency_report(scheme: Scheme) -> dict:
    eta = scheme.thresholds
    bound = counting_bound(scheme.n, scheme.ell, eta.s, scheme.space.kind)
    floor = max(1, bound.min_tests)
    formula = formula_rows(scheme)
    return {
        "rows": scheme.rows,
        "bursts": bound.bursts,
        "min_tests": bound.min_tests,
        "ratio": scheme.rows / floor,
        "formula_rows": formula,
        "within_formula": scheme.rows <= formula,
        "within_factor_2": scheme.rows <= 2 * floor,
        "within_factor_4": scheme.rows <= 4 * floor,
    }
