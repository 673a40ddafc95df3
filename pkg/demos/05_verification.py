"""Exhaustive verification, and what a failure looks like.

The block matrix and integer code alone cannot tell apart long bursts whose
heads differ by a multiple of the block period; the oracle reports the
least such pair.  Adding the phase-1 rows removes every collision.
"""

from sqgt_burst import BurstSpace, build_C1, build_C2, build_N, check_distinguishable
from sqgt_burst.core import stack

n, ell, s = 128, 16, 4
eta = range(1, s + 1)
space = BurstSpace.bounded(ell)

partial, _ = stack([("phase2", build_C2(n, ell, s)), ("integer", build_N(n))])
print("without phase 1:", check_distinguishable(partial, eta, space))

full, _ = stack([("phase1", build_C1(n, ell, s)), ("phase2", build_C2(n, ell, s)),
                 ("integer", build_N(n))])
witness = check_distinguishable(full, eta, space, jobs=4)
print("with phase 1:   ", "all", space.count(n), "bursts distinct" if witness is None else witness)
