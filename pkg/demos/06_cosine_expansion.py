"""Li_k(cos^2 x) as a cosine series; the coefficients are integrals over (0, 1)."""
import mpmath

from apery.numeric_eval import coeff_c, lemma23_partial, lemma23_tail_bound, lemma23_target
from apery.precision import PrecisionContext

ctx = PrecisionContext(15)
print("Coefficients c_n(2) and n^3 c_n(2), which tends to 1/4:")
for n in (1, 10, 100, 1000):
    c = coeff_c(n, 2, ctx).value
    print(f"  n={n:>4}: c = {mpmath.nstr(c, 12):>18}   n^3 c = {mpmath.nstr(c * n**3, 8)}")

x = mpmath.pi / 5
for N in (50, 200, 800):
    est = lemma23_partial("i", 2, x, N, ctx)
    target = lemma23_target("i", 2, x, ctx)
    print(f"N={N:>4}: partial {mpmath.nstr(est.value, 14)}  error {mpmath.nstr(abs(est.value - target), 3)}"
          f"  tail bound {mpmath.nstr(lemma23_tail_bound(2, N), 3)}")
print("Li_2(cos^2(pi/5)) =", mpmath.nstr(lemma23_target("i", 2, x, ctx), 14))
