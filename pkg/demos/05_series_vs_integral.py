"""Each series family against its integral over (0, 1) with log-power kernels."""
import mpmath

from apery.numeric_eval import SeriesSpec, rhs_integral, series_accelerated
from apery.precision import PrecisionContext

ctx = PrecisionContext(20)
cases = [("T3.1", 1, 2), ("T3.4", 1, 3), ("T3.6", 2, 1), ("T3.8", 1, 2)]
for fid, j, k in cases:
    s = series_accelerated(SeriesSpec(fid, j, k), ctx)
    r = rhs_integral(fid, j, k, ctx)
    with ctx.workdps():
        rel = abs(s.value - r.value) / abs(r.value)
    print(f"{fid} j={j} k={k}")
    print(f"  series   {mpmath.nstr(s.value, 18)}  (+- {mpmath.nstr(s.error, 2)})")
    print(f"  integral {mpmath.nstr(r.value, 18)}  (+- {mpmath.nstr(r.error, 2)})")
    print(f"  relative difference {mpmath.nstr(rel, 3)}")
