"""A single staircase row and the Gray codes behind the sketch matrix.

A burst of length 6 slides across the row; the quantized count climbs
0, 1, 2, 3 and falls back, each level held for 7 consecutive heads.
"""

from sqgt_burst import BurstSpace, gray_matrix, m_pattern, outcome_matrix, paired_gray_matrix

ell, eta = 6, (1, 2, 4)
row = m_pattern(ell, eta, c=1, width=56)
print("row:    ", "".join(map(str, row)))
levels = outcome_matrix(row, eta, BurstSpace.fixed(ell))[0]
print("levels: ", "".join(map(str, levels)))

print("\nreflected ternary Gray code, 2 digits (columns):")
print(gray_matrix(3, 2))
print("paired version (palindromic, each column twice):")
print(paired_gray_matrix(3, 2))
