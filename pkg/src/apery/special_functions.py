"""Polylogarithm, Legendre chi, inverse tangent integrals and Dirichlet constants.

Only integer orders and real arguments in [-1, 1] are supported.  Three
evaluation strategies are combined:

* the defining power series for ``|x| <= 1/2`` (geometric tail bound);
* Cohen-Villegas-Zagier acceleration for alternating series, used for
  ``Li_s(-x)``, ``Ti_m(x)`` with ``x > 1/2`` and for the constants eta and beta;
* the logarithmic expansion of ``Li_s`` about ``x = 1`` for ``1/2 < x < 1``.

Values are ``mpmath.mpf`` at ``ctx.dps`` working digits.
"""
from __future__ import annotations

import functools
import math
import threading
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import ContractError, DomainError
from .precision import DEFAULT, PrecisionContext, to_mpf

DIRICHLET_KINDS = ("zeta", "eta", "lambda", "beta")

# Direct series is used up to this |x|; acceleration/log expansion above.
SERIES_CUTOFF = mpmath.mpf(1) / 2


# --- alternating series acceleration ----------------------------------------

def cvz_terms(dps: int) -> int:
    """Number of terms giving relative error about ``10**-dps`` (rate 3+sqrt(8))."""
    return int(math.ceil(dps * math.log(10) / math.log(3 + math.sqrt(8)))) + 3


def alt_accel(term: Callable[[int], object], ctx: PrecisionContext = DEFAULT, n_terms: int | None = None):
    """Sum an alternating series ``sum_{n>=1} term(n)``.

    ``term`` returns signed terms whose signs alternate and whose magnitudes
    form a totally monotone sequence (the usual case for ``x**n / n**s``).
    Algorithm 1 of Cohen, Rodriguez Villegas and Zagier; only ``n_terms``
    evaluations of ``term`` are made.
    """
    with ctx.workdps():
        n = n_terms or cvz_terms(ctx.dps)
        a = [to_mpf(term(k + 1)) for k in range(n)]
        nonzero = [x for x in a if x]
        if not nonzero:
            return mpmath.mpf(0)
        first = mpmath.sign(nonzero[0])
        for k, x in enumerate(a):
            expected = first if k % 2 == 0 else -first
            if x and mpmath.sign(x) != expected:
                raise ContractError(f"term {k + 1} breaks sign alternation")
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpmath.mpf(-1)
        c = -d
        s = mpmath.mpf(0)
        for k in range(n):
            c = b - c
            s += c * abs(a[k])
            b = (k + n) * (k - n) * b / ((k + mpmath.mpf(1) / 2) * (k + 1))
        return first * s / d


# --- Dirichlet constants -----------------------------------------------------

_const_cache: dict[tuple[str, int, int], object] = {}
_const_lock = threading.Lock()
_external_store = None


def set_constant_store(store) -> None:
    """Install an object with ``get(kind, s, digits)`` / ``put(kind, s, digits, value)``.

    Used by the command line front end to persist constants between runs.
    ``None`` removes the store.
    """
    global _external_store
    _external_store = store


def _eta_series(s: int, ctx: PrecisionContext):
    return alt_accel(lambda n: (-1) ** (n - 1) * mpmath.mpf(n) ** (-s), ctx)


def _beta_series(s: int, ctx: PrecisionContext):
    return alt_accel(lambda n: (-1) ** (n - 1) * mpmath.mpf(2 * n - 1) ** (-s), ctx)


def _compute_dirichlet(kind: str, s: int, ctx: PrecisionContext):
    with ctx.workdps():
        if kind == "eta":
            if s == 0:
                return mpmath.mpf(1) / 2
            return _eta_series(s, ctx)
        if kind == "beta":
            return _beta_series(s, ctx)
        zeta = dirichlet("eta", s, ctx) / (1 - mpmath.mpf(2) ** (1 - s))
        if kind == "zeta":
            return zeta
        return (1 - mpmath.mpf(2) ** (-s)) * zeta


def dirichlet(kind: str, s: int, ctx: PrecisionContext = DEFAULT):
    """zeta, eta, lambda or beta at a non-negative integer.

    eta(0) = 1/2 by convention; zeta and lambda need ``s >= 2``, beta ``s >= 1``.
    """
    if kind not in DIRICHLET_KINDS:
        raise DomainError(f"unknown Dirichlet function {kind!r}")
    s = int(s)
    minimum = {"zeta": 2, "lambda": 2, "eta": 0, "beta": 1}[kind]
    if s < minimum:
        raise DomainError(f"{kind}(s) requires s >= {minimum}, got s={s}")
    key = (kind, s, ctx.dps)
    with _const_lock:
        hit = _const_cache.get(key)
    if hit is not None:
        return hit
    value = None
    if _external_store is not None:
        text = _external_store.get(kind, s, ctx.dps)
        if text is not None:
            with ctx.workdps():
                value = mpmath.mpf(text)
    if value is None:
        value = _compute_dirichlet(kind, s, ctx)
        if _external_store is not None:
            # a few spare digits so the binary value round-trips exactly
            _external_store.put(kind, s, ctx.dps, mpmath.nstr(value, ctx.dps + 3, strip_zeros=False))
    with _const_lock:
        _const_cache[key] = value
    return value


@functools.lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with ``B_1 = -1/2``."""
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2:
        return Fraction(0)
    return -sum(math.comb(m + 1, k) * bernoulli(k) for k in range(m)) / (m + 1)


def zeta_int(s: int, ctx: PrecisionContext):
    """Riemann zeta at any integer except 1 (Bernoulli numbers for ``s <= 0``)."""
    if s == 1:
        raise DomainError("zeta has a pole at s=1")
    if s >= 2:
        return dirichlet("zeta", s, ctx)
    m = -s
    b = (-1) ** m * bernoulli(m + 1) / (m + 1)
    return mpmath.mpf(b.numerator) / b.denominator


# --- polylogarithm ------------------------------------------------------------

def _as_real(x, ctx):
    with ctx.workdps():
        x = to_mpf(x)
    if abs(x) > 1:
        raise DomainError(f"argument must lie in [-1, 1], got {x}")
    return x


def polylog_power_series(s: int, x, ctx: PrecisionContext = DEFAULT):
    """``sum x**n / n**s`` summed directly; intended for ``|x| <= 1/2``."""
    with ctx.workdps():
        x = to_mpf(x)
        ax = abs(x)
        if ax >= 1:
            raise DomainError("power series needs |x| < 1")
        eps = ctx.working_eps
        total = mpmath.mpf(0)
        p = mpmath.mpf(1)
        n = 0
        while True:
            n += 1
            p *= x
            total += p / mpmath.mpf(n) ** s
            # |tail| <= |x|^(n+1) / (1 - |x|) for s >= 0
            if ax ** (n + 1) / (1 - ax) <= eps * abs(total):
                return total


def polylog_log_series(s: int, x, ctx: PrecisionContext = DEFAULT):
    """Expansion of ``Li_s(e**mu)`` in powers of ``mu = log(x)``; ``0 < x < 1``, ``s >= 1``."""
    if s < 1:
        raise DomainError("log expansion implemented for s >= 1")
    with ctx.workdps(5):
        x = to_mpf(x)
        if not 0 < x < 1:
            raise DomainError("log expansion needs 0 < x < 1")
        mu = mpmath.log(x)
        eps = ctx.working_eps
        harmonic = sum(mpmath.mpf(1) / i for i in range(1, s))
        total = mu ** (s - 1) / mpmath.factorial(s - 1) * (harmonic - mpmath.log(-mu))
        power = mpmath.mpf(1)  # mu^k / k!
        k = 0
        small = 0
        while True:
            if k != s - 1:
                term = zeta_int(s - k, ctx) * power
                total += term
                # zeta vanishes at negative even integers, so require two quiet steps
                if k > s and abs(term) <= eps * abs(total):
                    small += 1
                    if small >= 2:
                        break
                elif term:
                    small = 0
            k += 1
            power = power * mu / k
    with ctx.workdps():
        return +total


def polylog_int(s: int, x, ctx: PrecisionContext = DEFAULT):
    """``Li_s(x)`` for integer ``s >= 0`` and ``x`` in [-1, 1]."""
    s = int(s)
    if s < 0:
        raise DomainError(f"order must be >= 0, got {s}")
    x = _as_real(x, ctx)
    if x == 1 and s <= 1:
        raise DomainError(f"Li_{s}(1) diverges")
    with ctx.workdps():
        if x == 0:
            return mpmath.mpf(0)
        if s == 0:
            return x / (1 - x)
        if s == 1:
            return -mpmath.log1p(-x)
        if x == 1:
            return dirichlet("zeta", s, ctx)
        if x == -1:
            return -dirichlet("eta", s, ctx)
        if abs(x) <= SERIES_CUTOFF:
            return polylog_power_series(s, x, ctx)
        if x < 0:
            return alt_accel(lambda n: x**n / mpmath.mpf(n) ** s, ctx)
        return polylog_log_series(s, x, ctx)


def chi(s: int, x, ctx: PrecisionContext = DEFAULT):
    """Legendre chi ``sum x**(2n-1) / (2n-1)**s``."""
    s = int(s)
    if s < 1:
        raise DomainError(f"chi order must be >= 1, got {s}")
    x = _as_real(x, ctx)
    if abs(x) == 1 and s == 1:
        raise DomainError("chi_1 diverges at |x| = 1")
    with ctx.workdps():
        if x < 0:
            return -chi(s, -x, ctx)
        if x == 0:
            return mpmath.mpf(0)
        if x == 1:
            return dirichlet("lambda", s, ctx)
        if x <= SERIES_CUTOFF:
            eps = ctx.working_eps
            x2 = x * x
            total = mpmath.mpf(0)
            p = x
            n = 0
            while True:
                n += 1
                total += p / mpmath.mpf(2 * n - 1) ** s
                p *= x2
                if p / (1 - x2) <= eps * total:
                    return total
        return (polylog_int(s, x, ctx) - polylog_int(s, -x, ctx)) / 2


def ti(m: int, x, ctx: PrecisionContext = DEFAULT):
    """Inverse tangent integral ``sum (-1)**(n-1) x**(2n-1) / (2n-1)**m``; ``Ti_0(x) = x/(1+x**2)``."""
    m = int(m)
    if m < 0:
        raise DomainError(f"order must be >= 0, got {m}")
    x = _as_real(x, ctx)
    with ctx.workdps():
        if m == 0:
            return x / (1 + x * x)
        if x < 0:
            return -ti(m, -x, ctx)
        if x == 0:
            return mpmath.mpf(0)
        if x == 1:
            return dirichlet("beta", m, ctx)
        if x <= SERIES_CUTOFF:
            eps = ctx.working_eps
            x2 = x * x
            total = mpmath.mpf(0)
            p = x
            n = 0
            while True:
                n += 1
                term = p / mpmath.mpf(2 * n - 1) ** m
                total += term if n % 2 else -term
                p *= x2
                if p <= eps * abs(total):
                    return total
        return alt_accel(lambda n: (-1) ** (n - 1) * x ** (2 * n - 1) / mpmath.mpf(2 * n - 1) ** m, ctx)
