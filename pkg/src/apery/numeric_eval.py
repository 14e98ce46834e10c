"""Numerical evaluation of both sides of the series-versus-integral identities.

Left sides are infinite series whose terms decay only algebraically,
``a_n ~ n**-(k + 1/2)``, so they are summed to a horizon and then extrapolated
with Richardson elimination over partial sums at ``N0, 2 N0, 4 N0, ...``.
Right sides are integrals over (0, 1) with logarithmic endpoint behaviour and
go through :func:`~apery.quadrature.de_quadrature`.

Series families (term ``a_n``, with ``r(n) = binom(2n, n) / 4**n``):

=================== =========================================
``zeta_family``     ``r(n) / n**k * zeta_star(n, j)``
``t_family``        ``t_star(n, j) / (r(n) * n**(k+1))``
``nested_S_family`` ``r(n) / n**k * nested_S(n, j)``
``nested_T_family`` ``nested_T(n, j) / (r(n) * n**(k+1))``
=================== =========================================
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import harmonic_sums as hs
from . import special_functions as sf
from .errors import AccuracyNotReached, DomainError
from .precision import DEFAULT, PrecisionContext, to_mpf
from .quadrature import Estimate, de_quadrature

FAMILIES = ("zeta_family", "t_family", "nested_S_family", "nested_T_family")

# identity id -> series family
ID_FAMILY = {
    "T3.1": "zeta_family",
    "T3.4": "t_family",
    "T3.6": "nested_S_family",
    "T3.8": "nested_T_family",
}

_DEPTH_KIND = {
    "zeta_family": "zeta_star",
    "t_family": "t_star",
    "nested_S_family": "nested_S",
    "nested_T_family": "nested_T",
}

DEFAULT_HORIZON = 10_000
DEFAULT_LADDER_DEPTH = 8
DEFAULT_TARGET_DIGITS = 10


@dataclass(frozen=True)
class SeriesSpec:
    family: str
    j: int
    k: int

    def __post_init__(self):
        family = ID_FAMILY.get(self.family, self.family)
        object.__setattr__(self, "family", family)
        if family not in FAMILIES:
            raise DomainError(f"unknown series family {self.family!r}")
        if self.k < 1:
            raise DomainError(f"{family}: requires k >= 1, got k={self.k}")
        j_min = 1 if family == "nested_T_family" else 0
        if self.j < j_min:
            raise DomainError(f"{family}: requires j >= {j_min}, got j={self.j}")

    @property
    def central_in_numerator(self) -> bool:
        return self.family in ("zeta_family", "nested_S_family")

    @property
    def ladder_step(self) -> Fraction:
        """Spacing of the tail exponents.

        The nested sums converge like ``n**-1/2`` themselves, so their tails
        mix half-integer powers into the expansion.
        """
        return Fraction(1, 2) if self.family.startswith("nested") else Fraction(1)


def _terms(spec: SeriesSpec, N: int, ctx: PrecisionContext) -> list:
    """Float terms ``a_1..a_N`` (index 0 unused)."""
    with ctx.workdps():
        ratio = hs.float_column("central_ratio", 0, N, ctx)
        depth = hs.float_column(_DEPTH_KIND[spec.family], spec.j, N, ctx)
        k = spec.k
        out = [mpmath.mpf(0)]
        if spec.central_in_numerator:
            for n in range(1, N + 1):
                out.append(ratio[n] * depth[n] / mpmath.mpf(n) ** k)
        else:
            for n in range(1, N + 1):
                out.append(depth[n] / (ratio[n] * mpmath.mpf(n) ** (k + 1)))
        return out


def series_term_exact(spec: SeriesSpec, n: int) -> Fraction:
    getter = {
        "zeta_family": hs.zeta_star,
        "t_family": hs.t_star,
        "nested_S_family": hs.nested_S,
        "nested_T_family": hs.nested_T,
    }[spec.family]
    depth = getter(n, spec.j)
    ratio = hs.central_ratio(n)
    if spec.central_in_numerator:
        return ratio * depth / n**spec.k
    return depth / (ratio * n ** (spec.k + 1))


def series_partial_exact(spec: SeriesSpec, N: int) -> Fraction:
    """Exact partial sum (limited by the exact table size)."""
    return sum((series_term_exact(spec, n) for n in range(1, N + 1)), Fraction(0))


def series_partial(spec: SeriesSpec, N: int, ctx: PrecisionContext = DEFAULT):
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    with ctx.workdps():
        return mpmath.fsum(_terms(spec, N, ctx)[1:])


def richardson_ladder(partials: list, first_exponent, step, ratio: int = 2) -> list[list]:
    """Richardson table for ``S(N_i) = S - sum_l c_l N_i**-(p0 + l*step)``.

    ``partials`` are values at ``N_i = N0 * ratio**i``.  Row ``l`` of the
    result has ``l`` exponents eliminated.
    """
    rows = [list(partials)]
    cur = list(partials)
    level = 0
    while len(cur) > 1:
        p = to_mpf(first_exponent) + level * to_mpf(step)
        f = mpmath.mpf(ratio) ** p
        cur = [(f * cur[i + 1] - cur[i]) / (f - 1) for i in range(len(cur) - 1)]
        rows.append(cur)
        level += 1
    return rows


def series_accelerated(
    spec: SeriesSpec,
    ctx: PrecisionContext = DEFAULT,
    horizon: int = DEFAULT_HORIZON,
    depth: int = DEFAULT_LADDER_DEPTH,
    target_digits: int = DEFAULT_TARGET_DIGITS,
    step=None,
) -> Estimate:
    """Limit of the series by partial sums plus algebraic-tail extrapolation.

    The reported error is the larger distance from the final estimate to the
    two entries it was built from, plus a rounding allowance.  Raises
    :class:`AccuracyNotReached` (carrying the estimate) when that error is
    above ``10**-target_digits`` relative.
    """
    if depth < 1:
        raise DomainError(f"ladder depth must be >= 1, got {depth}")
    step = spec.ladder_step if step is None else step
    n0 = max(1, -(-horizon // 2**depth))
    sizes = [n0 * 2**i for i in range(depth + 1)]
    with ctx.workdps():
        terms = _terms(spec, sizes[-1], ctx)
        partials = []
        acc = mpmath.mpf(0)
        last = 0
        for size in sizes:
            acc += mpmath.fsum(terms[last + 1 : size + 1])
            last = size
            partials.append(acc)
        # tail of sum n^-(k+1/2) behaves like N^-(k-1/2)
        rows = richardson_ladder(partials, Fraction(2 * spec.k - 1, 2), step)
        value = rows[-1][0]
        prev = rows[-2]
        rounding = abs(value) * mpmath.mpf(10) ** (-(ctx.dps - 4))
        bound = max(abs(value - prev[0]), abs(value - prev[-1])) + rounding
        if bound > mpmath.mpf(10) ** (-target_digits) * abs(value):
            raise AccuracyNotReached(
                f"{spec.family}(j={spec.j}, k={spec.k}): extrapolation error {mpmath.nstr(bound, 3)} "
                f"above 1e-{target_digits}",
                value=value,
                bound=bound,
            )
        return Estimate(value, bound)


# --- integrands ----------------------------------------------------------------

def kernel_sqrt(t):
    """``log((1 + t) / (2 sqrt t))`` written to stay accurate near t = 1."""
    r = mpmath.sqrt(t)
    # 1 - sqrt(t) = (1 - t) / (1 + sqrt(t)) avoids cancellation
    d = (1 - t) / (1 + r)
    return mpmath.log1p(d * d / (2 * r))


def kernel_square(t):
    """``log((1 + t**2) / (2 t))``, accurate near t = 1."""
    return mpmath.log1p((1 - t) ** 2 / (2 * t))


def rhs_prefactor(family: str, k: int):
    family = ID_FAMILY.get(family, family)
    shift = {"zeta_family": 0, "t_family": 3, "nested_S_family": 1, "nested_T_family": 3}[family]
    sign = -1 if family == "zeta_family" else 1
    return sign * mpmath.mpf(2) ** (k + shift) / math.factorial(k - 1)


def rhs_integrand(family: str, j: int, k: int, ctx: PrecisionContext):
    """Integrand over (0, 1) without the constant prefactor."""
    family = ID_FAMILY.get(family, family)
    power = k - 1
    if family == "zeta_family":
        if j == 0:
            return lambda t: -kernel_sqrt(t) ** power / (1 + t)
        return lambda t: kernel_sqrt(t) ** power * sf.polylog_int(2 * j, -t, ctx) / t
    if family == "t_family":
        return lambda t: kernel_square(t) ** power * sf.ti(2 * j + 1, t, ctx) / (1 + t * t)
    if family == "nested_S_family":
        return lambda t: kernel_sqrt(t) ** power * sf.chi(2 * j, t, ctx) / t
    return lambda t: kernel_square(t) ** power * sf.chi(2 * j, t, ctx) / (1 + t * t)


def rhs_integral(family: str, j: int, k: int, ctx: PrecisionContext = DEFAULT) -> Estimate:
    """Right side of the integral representation for ``family`` at ``(j, k)``."""
    spec = SeriesSpec(family, j, k)
    if spec.family == "nested_S_family" and j < 1:
        raise DomainError("nested_S_family integral requires j >= 1 (chi_0 is not used)")
    pref = rhs_prefactor(spec.family, k)
    est = de_quadrature(rhs_integrand(spec.family, j, k, ctx), ctx)
    with ctx.workdps():
        return Estimate(pref * est.value, abs(pref) * est.error)


# --- coefficient integrals and the cosine expansion --------------------------------

def coeff_c(n: int, k: int, ctx: PrecisionContext = DEFAULT) -> Estimate:
    """``int_0^1 t**(n-1) * kernel_sqrt(t)**(k-1) dt``."""
    if n < 1 or k < 1:
        raise DomainError(f"coeff_c needs n, k >= 1, got n={n}, k={k}")
    return _coeff_c(n, k, ctx)


@functools.lru_cache(maxsize=20_000)
def _coeff_c(n: int, k: int, ctx: PrecisionContext) -> Estimate:
    if k == 1:
        with ctx.workdps():
            return Estimate(mpmath.mpf(1) / n, mpmath.mpf(0))
    kern = _cached_kernel_power(k - 1, ctx.dps)
    return de_quadrature(lambda t: t ** (n - 1) * kern(t), ctx)


@functools.lru_cache(maxsize=16)
def _cached_kernel_power(power: int, dps: int):
    # nodes repeat across n, so memoise the kernel per node
    @functools.lru_cache(maxsize=None)
    def kern(t):
        return kernel_sqrt(t) ** power

    return kern


def coeff_c_tail_bound(k: int, N: int):
    """Upper bound for ``sum_{n>N} c_n(k)``, ``k >= 2``.

    Uses ``kernel_sqrt(t) <= (1-t)**2 / (2 sqrt t)``, which turns each
    coefficient into a beta integral whose sum over ``n`` telescopes.
    """
    if k < 2:
        raise DomainError("tail bound needs k >= 2 (k = 1 coefficients are 1/n)")
    m = 2 * k - 2
    a0 = Fraction(2 * N + 3 - k, 2)  # N + 1 - (k-1)/2
    if a0 <= 0:
        raise DomainError(f"N={N} too small for the tail bound at k={k}")
    prod = Fraction(1)
    for i in range(m):
        prod *= a0 + i
    value = Fraction(math.factorial(m), 2 ** (k - 1)) / (m * prod)
    return mpmath.mpf(value.numerator) / value.denominator


def lemma23_tail_bound(k: int, N: int):
    """Bound on the truncation error of :func:`lemma23_partial` after ``N`` terms."""
    return mpmath.mpf(2) ** k / math.factorial(k - 1) * 2 * coeff_c_tail_bound(k, N)


def lemma23_partial(variant: str, k: int, x, N: int, ctx: PrecisionContext = DEFAULT) -> Estimate:
    """Partial sum of the cosine expansion of ``Li_k(cos(x)**2)`` (``variant='i'``)
    or ``Li_k(sin(x)**2)`` (``variant='ii'``); error covers quadrature only."""
    if variant not in ("i", "ii"):
        raise DomainError(f"variant must be 'i' or 'ii', got {variant!r}")
    if k < 1 or N < 1:
        raise DomainError(f"need k >= 1 and N >= 1, got k={k}, N={N}")
    with ctx.workdps():
        x = to_mpf(x)
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for n in range(1, N + 1):
            c = coeff_c(n, k, ctx)
            sgn = 1 if n % 2 else -1
            trig = mpmath.cos(2 * n * x)
            factor = sgn + trig if variant == "i" else sgn * (1 - trig)
            total += c.value * factor
            err += c.error * 2
        pref = mpmath.mpf(2) ** k / math.factorial(k - 1)
        return Estimate(pref * total, pref * err)


def lemma23_target(variant: str, k: int, x, ctx: PrecisionContext = DEFAULT):
    """``Li_k(cos(x)**2)`` or ``Li_k(sin(x)**2)``."""
    with ctx.workdps():
        x = to_mpf(x)
        arg = mpmath.cos(x) ** 2 if variant == "i" else mpmath.sin(x) ** 2
        return sf.polylog_int(k, arg, ctx)


# --- generating functions -------------------------------------------------------------

def gf_default_terms(t, ctx: PrecisionContext = DEFAULT) -> int:
    """Terms needed so that ``t**(2N)`` drops a few digits below the precision."""
    t = float(t)
    return max(1, math.ceil((ctx.digits - 4) * math.log(10) / (2 * math.log(1 / t))))


def gf_partial(kind: str, j: int, t, N: int | None = None, ctx: PrecisionContext = DEFAULT):
    """Partial sums of the odd-harmonic generating functions.

    ``eq36``:  ``sum (-1)**(n-1) O_n^(2j+1) t**(2n-1)``;
    ``eq310``: ``sum (-1)**(n-1) Obar_n^(2j) t**(2n-1)``.
    """
    if kind not in ("eq36", "eq310"):
        raise DomainError(f"unknown generating function {kind!r}")
    if kind == "eq36" and j < 0 or kind == "eq310" and j < 1:
        raise DomainError(f"{kind}: j={j} out of range")
    with ctx.workdps():
        t = to_mpf(t)
        if not abs(t) < 1:
            raise DomainError("generating functions need |t| < 1")
        if N is None:
            N = gf_default_terms(t, ctx)
        if kind == "eq36":
            col = hs.float_column("odd_h", 2 * j + 1, N, ctx)
        else:
            col = hs.float_column("alt_odd_h", 2 * j, N, ctx)
        total = mpmath.mpf(0)
        p = t
        t2 = t * t
        for n in range(1, N + 1):
            total += col[n] * p if n % 2 else -col[n] * p
            p *= t2
        return total


def gf_kernel(kind: str, j: int, t, ctx: PrecisionContext = DEFAULT):
    with ctx.workdps():
        t = to_mpf(t)
        if kind == "eq36":
            return sf.ti(2 * j + 1, t, ctx) / (1 + t * t)
        return sf.chi(2 * j, t, ctx) / (1 + t * t)
