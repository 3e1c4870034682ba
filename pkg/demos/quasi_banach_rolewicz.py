"""chi_[0,t] in L_p, p < 1: derivative zero everywhere, yet the curve moves.

Run: python3 demos/quasi_banach_rolewicz.py
"""

from fractions import Fraction

from vecriemann import continuity_modulus, ftc_check, indefinite_integral
from vecriemann import gallery as G

for p in (0.5, 0.25):
    print(f"p = {p}")
    for j in range(1, 5):
        h = 10.0 ** -j
        print(f"  h={h:.0e}  ||f(t+h)-f(t)|| = {G.rolewicz_increment(0, h, p):.3e}"
              f"  difference quotient = {G.rolewicz_quotient(0, h, p):.3e}")

# Integrating the zero derivative gives 0, but f(1) - f(0) = chi_[0,1].
print("FTC:", ftc_check(G.rolewicz_function(0.5), G.rolewicz_derivative(0.5)))

# The curve itself integrates fine and its primitive is continuous, F(x)(s) = (x - s)^+.
grid = [Fraction(j, 256) for j in range(257)]
table = indefinite_integral(G.rolewicz_function(0.5), grid, mesh=Fraction(1, 1000))
for h, w in continuity_modulus(table, [Fraction(1, 2 ** k) for k in (4, 6, 8)]):
    print(f"  spacing {str(h):6s} max ||F(x+h) - F(x)|| = {w:.6f}  (h = {float(h):.6f})")
print("  worst distance to (x - s)^+:", max(G.ramp_distance(F, x) for x, F in table))
