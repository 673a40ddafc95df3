"""Domain types, the SQGT quantizer and outcome computation.

A test (matrix row) applied to a burst counts the positives it contains;
the reported outcome is the number of thresholds not exceeding that count.
Matrices are plain ``numpy.uint8`` arrays of shape ``(rows, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ParameterError

ROLES = ("sketch", "refine", "phase1", "phase2", "integer")


@dataclass(frozen=True)
class Thresholds:
    """Strictly increasing positive thresholds ``eta_1 < ... < eta_s``."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ParameterError("at least one threshold is required")
        if vals[0] < 1:
            raise ParameterError(f"thresholds must be positive, got {vals}")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ParameterError(f"thresholds must be strictly increasing, got {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def saturation(cls, s: int) -> "Thresholds":
        """Thresholds ``(1, ..., s)``: the outcome is ``min(count, s)``."""
        return cls(tuple(range(1, s + 1)))

    @property
    def s(self) -> int:
        return len(self.values)

    @property
    def largest(self) -> int:
        return self.values[-1]

    @property
    def is_saturation(self) -> bool:
        return self.values == tuple(range(1, self.s + 1))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def as_thresholds(eta) -> Thresholds:
    if isinstance(eta, Thresholds):
        return eta
    if isinstance(eta, (int, np.integer)):
        return Thresholds((int(eta),))
    return Thresholds(tuple(eta))


class Burst(NamedTuple):
    """A run of ``length`` consecutive positives starting at ``head`` (0-based)."""

    head: int
    length: int

    @property
    def tail(self) -> int:
        return self.head + self.length - 1

    def validate(self, n: int) -> "Burst":
        if self.head < 0 or self.length < 1 or self.head + self.length > n:
            raise ParameterError(f"burst {tuple(self)} out of range for n={n}")
        return self


@dataclass(frozen=True)
class BurstSpace:
    """Candidate bursts: exactly ``ell`` long (fixed) or at most ``ell`` (bounded)."""

    kind: str
    ell: int

    def __post_init__(self):
        if self.kind not in ("fixed", "bounded"):
            raise ParameterError(f"unknown burst space {self.kind!r}")
        if self.ell < 1:
            raise ParameterError(f"ell must be >= 1, got {self.ell}")

    @classmethod
    def fixed(cls, ell: int) -> "BurstSpace":
        return cls("fixed", int(ell))

    @classmethod
    def bounded(cls, ell: int) -> "BurstSpace":
        return cls("bounded", int(ell))

    def count(self, n: int) -> int:
        self._check(n)
        if self.kind == "fixed":
            return n - self.ell + 1
        return sum(n - L + 1 for L in range(1, self.ell + 1))

    def arrays(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Heads and lengths of every burst, in canonical order."""
        self._check(n)
        if self.kind == "fixed":
            heads = np.arange(n - self.ell + 1)
            return heads, np.full_like(heads, self.ell)
        heads = [np.arange(n - L + 1) for L in range(1, self.ell + 1)]
        lengths = [np.full(n - L + 1, L) for L in range(1, self.ell + 1)]
        return np.concatenate(heads), np.concatenate(lengths)

    def _check(self, n):
        if self.ell > n:
            raise ParameterError(f"ell={self.ell} exceeds n={n}")


def enumerate_bursts(n: int, space: BurstSpace) -> list[Burst]:
    """All bursts of ``space`` in canonical order (length-major, then head)."""
    heads, lengths = space.arrays(n)
    return [Burst(int(h), int(L)) for h, L in zip(heads, lengths)]


def as_binary_matrix(bits, allow_empty: bool = False) -> np.ndarray:
    """Validate a 0/1 matrix and return it as a 2-D ``uint8`` array."""
    arr = np.asarray(bits)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ParameterError(f"matrix must be 2-D, got shape {arr.shape}")
    if arr.shape[1] < 1 or (arr.shape[0] < 1 and not allow_empty):
        raise ParameterError(f"matrix must be non-empty, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ParameterError("matrix entries must be 0 or 1")
    return arr.astype(np.uint8, copy=False)


def frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.uint8)
    arr.setflags(write=False)
    return arr


def quantize(count, eta) -> int | np.ndarray:
    """Number of thresholds not exceeding ``count`` (works elementwise on arrays)."""
    eta = as_thresholds(eta)
    levels = np.searchsorted(np.asarray(eta.values), count, side="right")
    if np.ndim(levels) == 0:
        if count < 0:
            raise ParameterError(f"count must be nonnegative, got {count}")
        return int(levels)
    return levels


def window_counts(M, heads, lengths) -> np.ndarray:
    """Raw positive counts, shape ``(rows, len(heads))``."""
    M = np.asarray(M)
    prefix = np.zeros((M.shape[0], M.shape[1] + 1), dtype=np.int64)
    np.cumsum(M, axis=1, out=prefix[:, 1:])
    heads = np.asarray(heads)
    return prefix[:, heads + np.asarray(lengths)] - prefix[:, heads]


def outcome(M, eta, burst) -> np.ndarray:
    """Quantized outcome vector of a single burst."""
    M = as_binary_matrix(M, allow_empty=True)
    b = Burst(*burst).validate(M.shape[1])
    counts = M[:, b.head:b.head + b.length].sum(axis=1, dtype=np.int64)
    return quantize(counts, eta)


def outcome_matrix(M, eta, space: BurstSpace) -> np.ndarray:
    """Outcome vectors of every burst in ``space`` as columns."""
    M = as_binary_matrix(M, allow_empty=True)
    heads, lengths = space.arrays(M.shape[1])
    return quantize(window_counts(M, heads, lengths), eta)


@dataclass(frozen=True)
class Component:
    name: str
    start: int
    stop: int

    @property
    def rows(self) -> int:
        return self.stop - self.start


@dataclass(frozen=True)
class Scheme:
    """A measurement matrix together with everything needed to decode it.

    ``components`` name contiguous row ranges (sketch/refine for fixed-length
    schemes, phase1/phase2/integer for bounded ones).  ``report`` carries
    build diagnostics and is not part of equality.
    """

    matrix: np.ndarray
    thresholds: Thresholds
    n: int
    space: BurstSpace
    components: tuple[Component, ...]
    report: dict = field(default_factory=dict, compare=False, repr=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        mat = frozen(as_binary_matrix(self.matrix, allow_empty=True))
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "thresholds", as_thresholds(self.thresholds))
        comps = tuple(c if isinstance(c, Component) else Component(*c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if mat.shape[1] != self.n:
            raise ParameterError(f"matrix has {mat.shape[1]} columns, expected n={self.n}")
        if not 1 <= self.space.ell <= self.n:
            raise ParameterError(f"ell={self.space.ell} must lie in [1, n={self.n}]")
        pos = 0
        for comp in self.components:
            if comp.name not in ROLES:
                raise ParameterError(f"unknown component role {comp.name!r}")
            if comp.start != pos or comp.stop < comp.start:
                raise ParameterError("component row ranges must partition the matrix rows")
            pos = comp.stop
        if pos != mat.shape[0]:
            raise ParameterError("component row ranges must partition the matrix rows")

    def __eq__(self, other):
        if not isinstance(other, Scheme):
            return NotImplemented
        return (
            self.n == other.n
            and self.space == other.space
            and self.thresholds == other.thresholds
            and self.components == other.components
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def ell(self) -> int:
        return self.space.ell

    def has(self, name: str) -> bool:
        return any(c.name == name for c in self.components)

    def component(self, name: str) -> Component:
        for comp in self.components:
            if comp.name == name:
                return comp
        raise KeyError(name)

    def rows_of(self, name: str) -> np.ndarray:
        comp = self.component(name)
        return self.matrix[comp.start:comp.stop]

    def outcome(self, burst) -> np.ndarray:
        b = Burst(*burst).validate(self.n)
        counts = self.matrix[:, b.head:b.head + b.length].sum(axis=1, dtype=np.int64)
        return quantize(counts, self.thresholds)

    def outcome_matrix(self) -> np.ndarray:
        return outcome_matrix(self.matrix, self.thresholds, self.space)


def stack(parts: Sequence[tuple[str, np.ndarray]]) -> tuple[np.ndarray, tuple[Component, ...]]:
    """Vertically stack named blocks, recording their row ranges."""
    comps, pos = [], 0
    for name, block in parts:
        comps.append(Component(name, pos, pos + block.shape[0]))
        pos += block.shape[0]
    return np.vstack([b for _, b in parts]).astype(np.uint8), tuple(comps)
