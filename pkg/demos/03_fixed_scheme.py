"""Locate a burst of exactly 29 positives among 2048 items with 11 tests."""

from sqgt_burst import build_fixed_scheme, decode, efficiency_report

scheme = build_fixed_scheme(n=2048, h=2, c=7, eta=(1, 2, 4))
print(f"{scheme.rows} tests:", ", ".join(f"{c.name} {c.rows}" for c in scheme.components))
print("sketch build:", scheme.report["sketch"])

for head in (0, 777, 2019):
    levels = scheme.outcome((head, 29))
    print(f"burst at {head:4d}: outcome {levels.tolist()} -> {decode(scheme, levels)}")

print("efficiency:", efficiency_report(scheme))
