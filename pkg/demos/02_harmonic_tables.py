"""Nested harmonic star sums: exact tables, and float columns for long partial sums."""
import mpmath

from apery.harmonic_sums import float_column, nested_S, nested_T, t_star, zeta_star
from apery.precision import PrecisionContext

print("zeta*_n({2}_j) for n = 1..5 (rows) and j = 0..3 (columns):")
for n in range(1, 6):
    print(f"  n={n}: " + "  ".join(str(zeta_star(n, j)) for j in range(4)))

print("\nt*_3({2}_1) =", t_star(3, 1), " nested_S(2,1) =", nested_S(2, 1), " nested_T(2,1) =", nested_T(2, 1))

ctx = PrecisionContext(25)
col = float_column("t_star", 1, 100_000, ctx)
with mpmath.workdps(30):
    print("\nt*_n({2}) creeps up to lambda(2) = pi^2/8:")
    for n in (10, 1000, 100_000):
        print(f"  n={n:>6}: {mpmath.nstr(col[n], 20)}   gap {mpmath.nstr(mpmath.pi**2 / 8 - col[n], 3)}")
