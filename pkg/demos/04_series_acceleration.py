"""Why extrapolation is needed: terms decay like n^-(k+1/2), so partial sums crawl."""
import mpmath

from apery.numeric_eval import SeriesSpec, richardson_ladder, series_accelerated, series_partial
from apery.precision import PrecisionContext

ctx = PrecisionContext(20)
spec = SeriesSpec("zeta_family", 0, 1)  # sum binom(2n,n)/(n 4^n) = 2 log 2
with mpmath.workdps(30):
    exact = 2 * mpmath.log(2)

print("Plain partial sums of sum binom(2n,n)/(n 4^n):")
sizes = [40 * 2**i for i in range(6)]
partials = [series_partial(spec, N, ctx) for N in sizes]
for N, s in zip(sizes, partials):
    print(f"  N={N:>5}: {mpmath.nstr(s, 15)}   error {mpmath.nstr(exact - s, 3)}")

with ctx.workdps():
    rows = richardson_ladder(partials, mpmath.mpf(1) / 2, 1)
print("\nRichardson on the tail exponents 1/2, 3/2, 5/2, ...:")
for level, row in enumerate(rows):
    print(f"  level {level}: {mpmath.nstr(row[0], 18)}   error {mpmath.nstr(exact - row[0], 3)}")

est = series_accelerated(spec, ctx)
print(f"\nDefault settings: {mpmath.nstr(est.value, 18)} with reported bound {mpmath.nstr(est.error, 3)}")
print(f"true error {mpmath.nstr(abs(est.value - exact), 3)}")
