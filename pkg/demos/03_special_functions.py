"""Polylogarithms, Legendre chi, inverse tangent integrals and Dirichlet constants."""
from fractions import Fraction

import mpmath

from apery import special_functions as sf
from apery.precision import PrecisionContext

ctx = PrecisionContext(40)
print("Catalan's constant beta(2):", mpmath.nstr(sf.dirichlet("beta", 2, ctx), 40))
print("eta(3) = 3 zeta(3)/4:      ", mpmath.nstr(sf.dirichlet("eta", 3, ctx), 40))
print("lambda(3) = 7 zeta(3)/8:   ", mpmath.nstr(sf.dirichlet("lambda", 3, ctx), 40))

half = Fraction(1, 2)
print("\nLi_2(1/2)  ", mpmath.nstr(sf.polylog_int(2, half, ctx), 35))
with mpmath.workdps(50):
    print("pi^2/12 - log(2)^2/2", mpmath.nstr(mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2, 35))

print("\nThe three regimes of Li_3, one per branch:")
for x in (Fraction(1, 3), Fraction(-9, 10), Fraction(9, 10)):
    print(f"  Li_3({x}) = {mpmath.nstr(sf.polylog_int(3, x, ctx), 30)}")
print("\nchi_2(1/2) =", mpmath.nstr(sf.chi(2, half, ctx), 30), "  Ti_3(1) = pi^3/32 =", mpmath.nstr(sf.ti(3, 1, ctx), 30))
