"""Riemann sums on uniform grids against gauge-fine partitions.

Run: python3 demos/gauge_integration.py
"""

import math

import numpy as np

from vecriemann import ConstantGauge, VectorFn, cauchy_gap, cousin_fine, henstock_integrate, integrate, riemann_sum
from vecriemann import gallery as G

# A smooth integrand: sampled tag gaps shrink with the mesh.
f = VectorFn.scalar(np.sin)
for k in (3, 6, 9, 12):
    print(f"mesh 2^-{k:<2d} adversarial gap {cauchy_gap(f, 2.0 ** -k):.3e}")
rep = integrate(f, 1e-5, [1e-2, 1e-4, 1e-6])
print(rep.verdict.value, rep.estimate.get(1), "exact", 1 - math.cos(1))

# Cousin's lemma by bisection: any positive gauge admits a fine tagged partition.
P = cousin_fine(0, 1, ConstantGauge(0.3))
print("constant gauge 0.3 ->", [str(b) for b in P.breakpoints])

# d/dx x^2 sin(1/x^2) is unbounded near 0; gauges shrinking like t^2 still integrate it.
wild = G.wild_function()
for g in G.wild_gauges(5, 9):
    P = cousin_fine(0, 1, g)
    print(f"  cap {g.cap:.2e}: {len(P.tags):6d} pieces, sum {riemann_sum(wild, P).get(1):.6f}")
v = henstock_integrate(wild, G.wild_gauges(5, 12), 5e-4).get(1)
print("gauge integral", v, "sin 1 =", math.sin(1))
