"""A weak*-continuous curve in l_1 whose Riemann sums refuse to settle.

Run: python3 demos/cantor_and_kadets.py
"""

from fractions import Fraction

from vecriemann import Verdict, integrate, riemann_sum
from vecriemann import gallery as G
from vecriemann.spaces import SeqLp, SeqSup, SeqVec, norm, pair

# The fat Cantor set: removed intervals shrink fast enough to leave measure 1/2.
cl = G.fat_cantor(20)
print("removed through level 20:", cl.removed_measure(), "=", float(cl.removed_measure()))
for k in (1, 2, 3):
    print(f"  level {k}:", [(str(a), str(b)) for a, b in cl.removed_intervals(k)])

# f puts a tent times e_k on every level-k removed interval.  At a peak f is a
# unit vector, on the Cantor set it is 0.
print("f(1/2) =", G.kadets_f(Fraction(1, 2)).entries, " f(1/6) =", G.kadets_f(Fraction(1, 6)).entries)

# Against a fixed c_0 vector the peaks fade like y_k, but their l_1 norm stays 1.
y = SeqVec.of({k: 2.0 ** -k for k in range(1, 41)}, SeqLp(1))
for k in (1, 5, 10, 20, 30):
    c = sum(G.removed_interval(k, 1)) / 2
    v = G.kadets_f(c)
    print(f"  level {k:2d}: <y, f(c)> = {pair(y, SeqVec(v.entries, SeqSup())):.3e}   ||f(c)||_1 = {norm(v)}")

# Two partitions sharing breakpoints, tags at peaks versus tags on the Cantor set.
f = G.kadets_function(12, hint_depth=0)
print("\nstage  mesh          ||S1 - S2||_1    closed form")
for m in range(1, 9):
    P1, P2 = G.kadets_partitions(m)
    gap = norm(riemann_sum(f, P1) - riemann_sum(f, P2))
    print(f"{m:5d}  {float(P1.mesh):.3e}     {gap:.12f}   {G.kadets_gap_closed_form(m)}")

# The integrator turns the certificate into a verdict.
rep = integrate(G.kadets_function(10), 1e-6, [Fraction(1, 2 ** (m - 1)) for m in range(1, 7)])
assert rep.verdict is Verdict.DIVERGENT
print("\nverdict:", rep.verdict.value, " certified gaps:", [round(g, 6) for _, g in rep.certified_by_mesh])
