"""
Sweeping the propensities
=========================

A coarse grid over c1 and c2 at fixed accelerator, including points on the
boundary c1 + c2 = 1, evaluated with the same routine the ``samuelson
sweep`` command uses. The equivalent shell call is::

    samuelson sweep --c1 0.1:0.7:7 --c2 0.3 --b 0.1:0.9:9 --p 100 --mode extended
"""

from collections import Counter

from samuelson.cli import SweepSpec, parse_range, sweep

spec = SweepSpec(
    c1=parse_range("0.1:0.7:7"),
    c2=[0.3],
    b=parse_range("0.1:0.9:9"),
    P=100.0,
    mode="extended",
)
rows = sweep(spec)

print(f"{len(rows)} grid points")
print(Counter((r[5], r[9]) for r in rows))

print("\n  c1     b     kind          s_e        radius  class")
for c1, c2, b, P, detg, kind, s_e, theta, radius, cls in rows[::4]:
    print(f"{c1:5.2f} {b:5.2f}  {kind:11s} {s_e:12.4f}  {radius:7.4f}  {cls}")
