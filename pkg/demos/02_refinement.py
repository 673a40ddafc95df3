"""Refinement rows: reading the head modulo 2*ell from the largest threshold.

The base matrix below has 7 rows and 29 columns; the refinement matrix built
from it gives every head a count of 3 or 4 per row, and the pattern of 3s and
4s spells out a column of B (or its complement).
"""

import numpy as np

from sqgt_burst import build_B, build_R, check_B, decode_R

B = build_B(h=2, c=7)
for r in B:
    print("".join(".#"[v] for v in r))
print("conditions:", "ok" if check_B(B, 4).ok else check_B(B, 4).failures())

eta = (1, 2, 4)
ell = B.shape[1]
R = build_R(B, eta, n=200)
for head in (0, 5, 29, 40, 100):
    counts = R[:, head:head + ell].sum(axis=1)
    levels = np.searchsorted(eta, counts, side="right")
    print(f"head {head:3d}: counts {counts.tolist()} -> residue {decode_R(B, eta, levels)}"
          f" (head mod {2 * ell} = {head % (2 * ell)})")
