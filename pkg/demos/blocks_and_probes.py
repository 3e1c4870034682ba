"""Almost disjoint blocks in l_1 and a weak-null probe in c_0.

Run: python3 demos/blocks_and_probes.py
"""

import random

from vecriemann import gallery as G
from vecriemann.spaces import SeqLp, SeqSup, unit

for p, beta, eps in ((3, 1.0, 0.01), (8, 0.5, 0.001)):
    r = G.blocks_verify(G.blocks_build(p, beta, eps, eps * 2.0 ** -p / 2, rng=random.Random(0)))
    print(f"p={p} beta={beta} eps={eps}: ||sum z|| = {r.actual:.6f} >= {r.lower_bound:.6f}  ok={r.ok}")
    for i, off, cap, ynorm, floor in r.chain:
        print(f"    block {i}: ||z - y|| = {off:.2e} < {cap:.2e},  ||y|| = {ynorm:.4f} >= {floor:.4f}")

# Nested l_1(l_2) entries behave the same way.
r = G.blocks_verify(G.blocks_build(4, 1.0, 0.01, 1e-4, inner=SeqLp(2)))
print("l_1(l_2):", r.ok, r.actual, r.lower_bound)

# Unit vectors of c_0 pair to zero against any l_1 functional but keep norm 1.
decay, floor = G.weak_null_probe([unit(n, SeqSup()) for n in range(1, 11)], [G.geometric_battery_element(20)])
print("pairings:", [f"{d:.1e}" for d in decay], "norm floor:", floor)
print("p_B(e_k) on the c_0 unit ball:", [G.strong_star_seminorm(unit(k, SeqLp(1))) for k in (1, 10, 100)])
