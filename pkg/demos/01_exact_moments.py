"""Trigonometric moments on [0, pi/2] computed exactly as polynomials in pi."""
import mpmath

from apery.exact_qpi import lemma21_sides, lemma22_sides, moment_trig_power, trig_power_expand
from apery.precision import PrecisionContext

print("cos^4 x as a cosine sum:", trig_power_expand("cos", 4))
print("sin^3 x as a sine sum:  ", trig_power_expand("sin", 3))

m = moment_trig_power(2, "cos", 2)
print("\nint_0^{pi/2} x^2 cos^2 x dx =", m)
print("  numerically:", mpmath.nstr(m.to_real(PrecisionContext(25)), 25))

print("\nBoth sides of a few moment identities, reduced to canonical form:")
for part, mm, n in [("i", 2, 3), ("iii", 1, 2), ("iv", 3, 4)]:
    lhs, rhs = lemma21_sides(part, mm, n)
    print(f"  L2.1.{part} m={mm} n={n}: {lhs}   equal: {lhs == rhs}")
lhs, rhs = lemma22_sides("iv", 2, 3)
print(f"  L2.2.iv m=2 n=3:  {lhs}   equal: {lhs == rhs}")
