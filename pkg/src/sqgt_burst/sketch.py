"""The sketch matrix K: separates fixed-length bursts whose heads are far apart.

Each row is built from staircase patterns whose quantized outcome climbs
``0, 1, ..., s`` and falls back, holding every level on a plateau of heads.
Stacking rows whose plateaus shrink by a factor ``s + 1`` makes the column
outcomes run through a reflected Gray code, so two heads share an outcome
only if they sit in the same plateau of the fastest row.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import oracle
from .core import Burst, BurstSpace, Scheme, Thresholds, as_thresholds, frozen
from .errors import InconsistentOutcomeError, ParameterError, UnverifiedConstructionError
from .gray import gray_index

MAX_COLUMNS = 1 << 26
VERIFY_CAP = 1 << 20


def _oll(ell, x):
    return np.r_[np.zeros(ell - x, np.uint8), np.ones(x, np.uint8)]


def _llo(ell, x):
    return np.r_[np.ones(x, np.uint8), np.zeros(ell - x, np.uint8)]


def m_period(ell: int, eta, c: int) -> np.ndarray:
    """One period of the staircase row, length ``(2s + 2)(c*ell + 1)``."""
    eta = as_thresholds(eta)
    if eta.largest > ell:
        raise ParameterError(f"largest threshold {eta.largest} exceeds ell={ell}")
    if c < 1:
        raise ParameterError(f"repetition count must be >= 1, got {c}")
    if (2 * eta.s + 2) * (c * ell + 1) > MAX_COLUMNS:
        raise ParameterError("staircase period exceeds the column cap")
    zero, one = np.zeros(1, np.uint8), np.ones(1, np.uint8)
    parts = [np.tile(_oll(ell, 0), c)]
    for e in eta:
        parts += [zero, np.tile(_oll(ell, e), c)]
    parts += [one, np.tile(_llo(ell, ell), c)]
    for e in reversed(eta.values):
        parts += [one, np.tile(_llo(ell, e - 1), c)]
    parts.append(zero)
    return np.concatenate(parts)


def _periodic(row: np.ndarray, width: int) -> np.ndarray:
    reps = -(-width // row.shape[-1])
    return np.tile(row, reps)[..., :width]


def m_pattern(ell: int, eta, c: int, width: int | None = None) -> np.ndarray:
    """Staircase row truncated (or periodically extended) to ``width`` columns.

    Its length-``ell`` outcome over heads is ``[0..s, s..0]`` with every
    level held for ``c*ell + 1`` consecutive heads, repeated periodically.
    """
    period = m_period(ell, eta, c)
    if width is None:
        return period
    if width < 1:
        raise ParameterError("width must be >= 1")
    return _periodic(period, width)


def rec_saturated(ell: int, i: int) -> np.ndarray:
    """One period (``2(ell+1)^(i+1)`` columns) of the saturated recursion."""
    if ell < 2 or i < 1:
        raise ParameterError(f"need ell >= 2 and i >= 1, got ell={ell}, i={i}")
    if 2 * (ell + 1) ** (i + 1) > MAX_COLUMNS:
        raise ParameterError("recursion width exceeds the column cap")
    eta = Thresholds.saturation(ell)
    rec = m_period(ell, eta, 1)[None, :]
    for k in range(2, i + 1):
        c = ((ell + 1) ** k - 1) // ell
        rec = np.vstack([m_period(ell, eta, c), np.tile(rec, ell + 1)])
    return rec


def rec_general(ell: int, eta, i: int, verify: bool = True) -> np.ndarray:
    """Truncated recursion for ``s < ell``; returns one period with ``i`` rows.

    At each level the new top row is a staircase with ``floor(alpha/ell)``
    repetitions padded by ``alpha mod ell`` zeros on both sides, and the
    ``s + 1`` copies of the previous level below it are trimmed by the same
    amount where they meet.  With ``verify`` the first half of the period is
    checked exhaustively for separating heads at distance ``>= ell + 2``.
    """
    eta = as_thresholds(eta)
    s = eta.s
    if not s < ell:
        raise ParameterError(f"truncated recursion needs s < ell, got s={s}, ell={ell}")
    if i < 1:
        raise ParameterError(f"need i >= 1, got {i}")
    rec = m_period(ell, eta, 1)[None, :]
    for _ in range(2, i + 1):
        width = rec.shape[1]
        alpha = width // 2 - 1
        r = alpha % ell
        if (s + 1) * width > MAX_COLUMNS:
            raise ParameterError("recursion width exceeds the column cap")
        pad = np.zeros(r, np.uint8)
        top = np.concatenate([pad, m_period(ell, eta, alpha // ell), pad])
        lower = np.concatenate(
            [rec[:, :width - r]] + [rec[:, r:width - r]] * (s - 1) + [rec[:, r:]], axis=1
        )
        rec = np.vstack([top, lower])
    if verify:
        witness = _first_half_witness(rec, eta, ell)
        if witness is not None:
            raise UnverifiedConstructionError(
                f"truncated recursion (ell={ell}, eta={eta.values}, i={i}) merges far heads: {witness}",
                witness,
            )
    return rec


def _first_half_witness(rec, eta, ell):
    width = rec.shape[1]
    window = _periodic(rec, width // 2 + ell - 1)
    return oracle.check_distinguishable(window, eta, BurstSpace.fixed(ell), oracle.FarApart(ell + 2))


def _sketch_scheme(K, eta, n, ell, report):
    return Scheme(K, eta, n, BurstSpace.fixed(ell), (("sketch", 0, K.shape[0]),), report=report)


def build_K(n: int, ell: int, eta, verify_cap: int = VERIFY_CAP, jobs: int = 1) -> Scheme:
    """Sketch matrix separating all heads at distance ``>= ell + 2``.

    Saturated thresholds ``(1..ell)`` use ``ceil(log_{ell+1}(n-ell+1))`` rows
    whose outcome matrix is the reflected Gray code expanded by ``ell + 1``.
    Otherwise the truncated recursion targets
    ``ceil(log_{s+1}((n-ell+1)/ell))`` rows, taking one more row (flagged)
    if the target does not cover every head, and falling back to the single
    largest threshold if verification fails.
    """
    eta = as_thresholds(eta)
    if not 2 <= ell <= n:
        raise ParameterError(f"need 2 <= ell <= n, got ell={ell}, n={n}")
    if eta.largest > ell:
        raise ParameterError(f"largest threshold {eta.largest} exceeds ell={ell}")
    heads = n - ell + 1
    verify = n <= verify_cap
    space = BurstSpace.fixed(ell)
    far = oracle.FarApart(ell + 2)

    if eta.s == ell:
        rows = oracle.ceil_log(ell + 1, heads)
        K = np.zeros((rows, n), np.uint8)
        for j, k in enumerate(range(rows, 0, -1)):
            K[j] = m_pattern(ell, eta, ((ell + 1) ** k - 1) // ell, n)
        report = {"construction": "saturated", "rows": rows, "target_rows": rows,
                  "deviation": False, "fallback": False, "verified": verify}
        if verify:
            witness = oracle.check_distinguishable(K, eta, space, far, jobs=jobs)
            if witness is not None:
                raise UnverifiedConstructionError(f"sketch matrix merges far heads: {witness}", witness)
        return _sketch_scheme(K, eta, n, ell, report)

    target = oracle.ceil_log(eta.s + 1, Fraction(heads, ell))
    witness = None
    for design, fallback in ((eta, False), (Thresholds((eta.largest,)), True)):
        base = design.s + 1
        first = oracle.ceil_log(base, Fraction(heads, ell))
        for rows in (first, first + 1):
            if rows == 0:
                K = np.zeros((0, n), np.uint8)
            else:
                rec = rec_general(ell, design, rows, verify=False)
                if rec.shape[1] // 2 < heads and rows == first:
                    continue
                K = _periodic(rec, n)
            if verify:
                witness = oracle.check_distinguishable(K, eta, space, far, jobs=jobs)
                if witness is not None:
                    continue
            report = {"construction": "single_threshold" if fallback else "truncated_recursion",
                      "rows": rows, "target_rows": target, "deviation": rows != target,
                      "fallback": fallback, "verified": verify}
            return _sketch_scheme(K, eta, n, ell, report)
    raise UnverifiedConstructionError(
        f"no verified sketch matrix for n={n}, ell={ell}, eta={eta.values}: {witness}", witness
    )


def _class_windows(scheme: Scheme) -> dict:
    cache = scheme._cache
    if "sketch_windows" not in cache:
        K = scheme.rows_of("sketch")
        space = BurstSpace.fixed(scheme.ell)
        O = oracle.all_outcomes(K, scheme.thresholds, space)
        windows = {}
        for head in range(O.shape[1]):
            key = tuple(int(v) for v in O[:, head])
            lo, _ = windows.get(key, (head, head))
            windows[key] = (lo, head)
        cache["sketch_windows"] = windows
    return cache["sketch_windows"]


def decode_K(scheme: Scheme, outcome) -> range:
    """Window of candidate heads consistent with the sketch rows' outcome.

    ``outcome`` may be the sketch part alone or the full scheme outcome.
    """
    comp = scheme.component("sketch")
    levels = np.asarray(outcome, dtype=np.int64).ravel()
    if levels.size == scheme.rows:
        levels = levels[comp.start:comp.stop]
    if levels.size != comp.rows:
        raise InconsistentOutcomeError(f"expected {comp.rows} sketch levels, got {levels.size}")
    ell, last = scheme.ell, scheme.n - scheme.ell
    eta = scheme.thresholds
    if eta.s == ell and comp.rows > 0:
        if levels.min() < 0 or levels.max() > ell:
            raise InconsistentOutcomeError(f"levels {levels.tolist()} outside [0, {ell}]")
        lo = gray_index(ell + 1, levels) * (ell + 1)
        if lo > last:
            raise InconsistentOutcomeError(f"sketch outcome {levels.tolist()} points past the last head")
        return range(lo, min(lo + ell, last) + 1)
    key = tuple(int(v) for v in levels)
    windows = _class_windows(scheme)
    if key not in windows:
        raise InconsistentOutcomeError(f"sketch outcome {key} is not produced by any head")
    lo, hi = windows[key]
    return range(lo, hi + 1)


def build_saturated_identifier(n: int, ell: int, verify_cap: int = VERIFY_CAP) -> Scheme:
    """Complete fixed-length scheme for saturated thresholds ``(1..ell)``.

    ``ceil(log_{ell+1}(n-ell+1))`` rows: the staircase rows of one level
    fewer, stacked over the fast row ``0^ell (1^(ell+1) 0^(ell+1))...``.  The
    outcome of head ``i`` is the ``i``-th reflected Gray codeword, so every
    head is identified.
    """
    if not 2 <= ell < n:
        raise ParameterError(f"need 2 <= ell < n, got ell={ell}, n={n}")
    eta = Thresholds.saturation(ell)
    rows = oracle.ceil_log(ell + 1, n - ell + 1)
    K = np.zeros((rows, n), np.uint8)
    for j, k in enumerate(range(rows - 1, 0, -1)):
        K[j] = m_pattern(ell, eta, ((ell + 1) ** k - 1) // ell, n)
    fast = np.r_[np.ones(ell + 1, np.uint8), np.zeros(ell + 1, np.uint8)]
    K[-1, ell:] = _periodic(fast, n - ell)
    verify = n <= verify_cap
    if verify:
        witness = oracle.check_distinguishable(K, eta, BurstSpace.fixed(ell))
        if witness is not None:
            raise UnverifiedConstructionError(f"saturated identifier collides: {witness}", witness)
    report = {"construction": "saturated_identifier", "rows": rows, "target_rows": rows,
              "deviation": False, "fallback": False, "verified": verify}
    return _sketch_scheme(frozen(K), eta, n, ell, report)


def decode_saturated_identifier(scheme: Scheme, outcome):
    """Head of the burst that produced ``outcome`` under the saturated identifier."""
    levels = [int(v) for v in outcome]
    ell = scheme.ell
    if len(levels) != scheme.rows or any(not 0 <= v <= ell for v in levels):
        raise InconsistentOutcomeError(f"outcome {levels} is not a valid codeword")
    head = gray_index(ell + 1, levels)
    if head > scheme.n - ell:
        raise InconsistentOutcomeError(f"outcome {levels} points past the last head")
    return Burst(head, ell)
