"""Bursts of unknown length (at most 16) among 512 items, outcomes capped at 4."""

from sqgt_burst import build_bounded_scheme, decode_bounded, decode_C2

n, ell, s = 512, 16, 4
scheme = build_bounded_scheme(n, ell, s)
print(f"{scheme.rows} tests:", ", ".join(f"{c.name} {c.rows}" for c in scheme.components))
print(f"reference height {scheme.report['reference_bound']:.0f},"
      f" exceeded: {scheme.report['exceeds_reference_bound']}")

phase2 = scheme.component("phase2")
for burst in [(3, 1), (100, 4), (250, 11), (495, 16)]:
    levels = scheme.outcome(burst)
    reading = decode_C2(levels[phase2.start:phase2.stop], ell, s)
    print(f"burst {burst}: length {reading.length}, head residue {reading.head_mod}"
          f" -> {decode_bounded(scheme, levels)}")
print("no positives ->", decode_bounded(scheme, [0] * scheme.rows))
