"""Independent brute-force reference used to cross-check the library.

Written with plain Python loops on purpose: nothing here shares code with
the vectorised implementation under test.
"""

import itertools

import numpy as np
import pytest


def naive_level(count, thresholds):
    return sum(1 for t in thresholds if t <= count)


def naive_outcome(matrix, thresholds, head, length):
    levels = []
    for row in np.asarray(matrix).tolist():
        count = sum(row[head:head + length])
        levels.append(naive_level(count, thresholds))
    return tuple(levels)


def naive_bursts(n, ell, kind):
    lengths = [ell] if kind == "fixed" else range(1, ell + 1)
    return [(h, L) for L in lengths for h in range(n - L + 1)]


def naive_collisions(matrix, thresholds, n, ell, kind, related=lambda a, b: True):
    """All related burst pairs with equal outcomes, as a list of index pairs."""
    bursts = naive_bursts(n, ell, kind)
    outs = [naive_outcome(matrix, thresholds, h, L) for h, L in bursts]
    return [
        (bursts[i], bursts[j])
        for i, j in itertools.combinations(range(len(bursts)), 2)
        if outs[i] == outs[j] and related(bursts[i], bursts[j])
    ]


def reflected_gray(q, h):
    """Gray codewords as digit tuples, most significant digit first."""
    if h == 0:
        return [()]
    inner = reflected_gray(q, h - 1)
    words = []
    for d in range(q):
        block = inner if d % 2 == 0 else inner[::-1]
        words += [(d,) + w for w in block]
    return words


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
