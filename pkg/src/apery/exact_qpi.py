"""Exact arithmetic in Q[pi] and exact trigonometric moment integrals on [0, pi/2].

Every integral of the form ``int_0^{pi/2} x^p * trig(a x) dx`` with integer
``p, a`` is a polynomial in pi with rational coefficients.  This module
computes such integrals symbolically so that the trigonometric moment lemmas
can be checked with zero tolerance.

>>> half_pi = QPiPoly.half_pi()
>>> half_pi * half_pi
QPiPoly({2: Fraction(1, 4)})
>>> moment_trig_power(2, "cos", 2)
QPiPoly({1: Fraction(-1, 8), 3: Fraction(1, 48)})
"""
from __future__ import annotations

import functools
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

import mpmath

from . import harmonic_sums as hs
from .errors import DomainError
from .precision import PrecisionContext

Rational = Fraction

TRIGS = ("cos", "sin")


class QPiPoly:
    """Polynomial ``sum c_d * pi**d`` with :class:`~fractions.Fraction` coefficients.

    Instances are immutable and canonical: zero coefficients are never stored,
    so equality is plain dictionary equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | None = None):
        clean = {}
        for d, c in (coeffs or {}).items():
            d = int(d)
            if d < 0:
                raise ValueError(f"negative degree {d}")
            c = Fraction(c)
            if c:
                clean[d] = c
        self._coeffs = clean

    # constructors
    @classmethod
    def constant(cls, c) -> "QPiPoly":
        return cls({0: Fraction(c)})

    @classmethod
    def pi_power(cls, d: int, c=1) -> "QPiPoly":
        return cls({d: Fraction(c)})

    @classmethod
    def half_pi(cls, power: int = 1) -> "QPiPoly":
        """``(pi/2)**power`` stored as ``2**-power * pi**power``."""
        return cls({power: Fraction(1, 2**power)})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, d: int) -> Fraction:
        return self._coeffs.get(d, Fraction(0))

    # ring operations
    def _coerce(self, other) -> "QPiPoly":
        if isinstance(other, QPiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPiPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return QPiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPiPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return QPiPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("QPiPoly division by zero")
            return QPiPoly({d: c / other for d, c in self._coeffs.items()})
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = QPiPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        items = ", ".join(f"{d}: {c!r}" for d, c in sorted(self._coeffs.items()))
        return f"QPiPoly({{{items}}})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d in sorted(self._coeffs, reverse=True):
            c = self._coeffs[d]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if d == 0:
                body = str(a)
            else:
                pi = "pi" if d == 1 else f"pi^{d}"
                if a.denominator == 1:
                    body = pi if a.numerator == 1 else f"{a.numerator}*{pi}"
                else:
                    num = pi if a.numerator == 1 else f"{a.numerator}*{pi}"
                    body = f"{num}/{a.denominator}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_real(self, ctx: PrecisionContext):
        """Numeric value; evaluated with enough guard digits to absorb cancellation."""
        return qpi_to_real(self, ctx)


def qpi_arith(a: QPiPoly, b: QPiPoly, op: str) -> QPiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def qpi_to_real(p: QPiPoly, ctx: PrecisionContext):
    if p.is_zero():
        return mpmath.mpf(0)
    # Extra digits cover cancellation between large coefficients.
    bits = max(abs(c.numerator).bit_length() + c.denominator.bit_length() for c in p._coeffs.values())
    extra = bits // 3 + 5 * max(p.degree(), 1)
    with mpmath.workdps(ctx.dps + extra):
        pi = +mpmath.pi
        s = mpmath.mpf(0)
        for d, c in p._coeffs.items():
            s += mpmath.mpf(c.numerator) / c.denominator * pi**d
    with ctx.workdps():
        return +s


def _sin_half_pi(a: int) -> int:
    return (0, 1, 0, -1)[a % 4]


def _cos_half_pi(a: int) -> int:
    return (1, 0, -1, 0)[a % 4]


@functools.lru_cache(maxsize=None)
def moment_multi_angle(p: int, trig: str, a: int) -> QPiPoly:
    """``int_0^{pi/2} x**p * trig(a*x) dx`` exactly.

    Integration by parts lowers ``p`` by one per step; the boundary values at
    ``pi/2`` are ``sin(a pi/2), cos(a pi/2)`` in ``{-1, 0, 1}``.
    """
    if p < 0 or a < 0:
        raise DomainError(f"need p >= 0 and a >= 0, got p={p}, a={a}")
    if trig not in TRIGS:
        raise ValueError(f"trig must be 'cos' or 'sin', got {trig!r}")
    if a == 0:
        if trig == "sin":
            return QPiPoly()
        return QPiPoly.half_pi(p + 1) / (p + 1)
    if trig == "cos":
        # [x^p sin(ax)/a] - (p/a) int x^(p-1) sin(ax)
        out = QPiPoly.half_pi(p) * Fraction(_sin_half_pi(a), a)
        if p:
            out = out - moment_multi_angle(p - 1, "sin", a) * Fraction(p, a)
        return out
    # [-x^p cos(ax)/a] + (p/a) int x^(p-1) cos(ax)
    out = -QPiPoly.half_pi(p) * Fraction(_cos_half_pi(a), a)
    if p:
        out = out + moment_multi_angle(p - 1, "cos", a) * Fraction(p, a)
    else:
        out = out + Fraction(1, a)
    return out


def expansion_basis(trig: str, q: int) -> str:
    """Which trig function the terms of ``trig_power_expand(trig, q)`` multiply."""
    return "sin" if trig == "sin" and q % 2 else "cos"


@functools.lru_cache(maxsize=None)
def _trig_power_terms(trig: str, q: int) -> tuple[tuple[int, Fraction], ...]:
    # Coefficients b_f of z**f in (z + s/z)**q with s = +1 (cos) or -1 (sin).
    s = 1 if trig == "cos" else -1
    b = {q - 2 * r: comb(q, r) * s**r for r in range(q + 1)}
    scale = Fraction(1, 2**q)
    if trig == "sin":
        # divide by i**q, folded with the conjugate pair into a real coefficient
        scale *= (-1) ** (q // 2)
    terms = []
    for f in range(q % 2, q + 1, 2):
        c = b[f] * scale if f == 0 else 2 * b[f] * scale
        terms.append((f, c))
    return tuple(terms)


def trig_power_expand(trig: str, q: int) -> list[tuple[int, Fraction]]:
    """Finite multiple-angle expansion of ``cos(x)**q`` or ``sin(x)**q``.

    Returns ``(frequency, coefficient)`` pairs such that
    ``sum(c * basis(f * x)) == trig(x)**q`` where ``basis`` is given by
    :func:`expansion_basis` (sine only for odd powers of sine).
    """
    if trig not in TRIGS:
        raise ValueError(f"trig must be 'cos' or 'sin', got {trig!r}")
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    return list(_trig_power_terms(trig, q))


@functools.lru_cache(maxsize=None)
def moment_trig_power(p: int, trig: str, q: int) -> QPiPoly:
    """``int_0^{pi/2} x**p * trig(x)**q dx`` exactly."""
    basis = expansion_basis(trig, q)
    out = QPiPoly()
    for f, c in trig_power_expand(trig, q):
        out = out + moment_multi_angle(p, basis, f) * c
    return out


# --- the moment lemmas ------------------------------------------------------

LEMMA21_DOMAINS = {
    "i": (0, 1),
    "ii": (1, 1),
    "iii": (0, 0),
    "iv": (1, 0),
}
LEMMA22_DOMAINS = {
    "i": (0, 1),
    "ii": (0, 1),
    "iii": (1, 1),
    "iv": (1, 1),
}


def _check(part, m, n, domains, name):
    if part not in domains:
        raise DomainError(f"{name}: unknown part {part!r}")
    m_min, n_min = domains[part]
    if m < m_min:
        raise DomainError(f"{name}.{part}: requires m >= {m_min}, got m={m}")
    if n < n_min:
        raise DomainError(f"{name}.{part}: requires n >= {n_min}, got n={n}")


def _hp(power: int) -> QPiPoly:
    return QPiPoly.half_pi(power)


def lemma21_sides(part: str, m: int, n: int) -> tuple[QPiPoly, QPiPoly]:
    """Both sides of the moment identities for ``(-1)**(n-1) + cos(2nx)`` kernels."""
    _check(part, m, n, LEMMA21_DOMAINS, "L2.1")
    sgn = -1 if (n - 1) % 2 else 1  # (-1)**(n-1)
    if part in ("i", "ii"):
        p = 2 * m if part == "i" else 2 * m - 1
        lhs = moment_multi_angle(p, "cos", 0) * sgn + moment_multi_angle(p, "cos", 2 * n)
        rhs = QPiPoly()
        if part == "i":
            for j in range(m + 1):
                c = Fraction((-1) ** j * sgn, (2 * n) ** (2 * j) * factorial(2 * m - 2 * j + 1))
                rhs = rhs + _hp(2 * m - 2 * j + 1) * c
            rhs = rhs * factorial(2 * m)
        else:
            for j in range(m):
                c = Fraction((-1) ** j * sgn, (2 * n) ** (2 * j) * factorial(2 * m - 2 * j))
                rhs = rhs + _hp(2 * m - 2 * j) * c
            rhs = rhs + Fraction((-1) ** m * (1 - (-1) ** n), (2 * n) ** (2 * m))
            rhs = rhs * factorial(2 * m - 1)
        return lhs, rhs
    if part == "iii":
        lhs = QPiPoly()
        for k in range(1, n + 1):
            lhs = lhs + moment_multi_angle(2 * m, "cos", 2 * k - 1) * (2 * (-1) ** (n + k))
        rhs = QPiPoly()
        for j in range(m + 1):
            c = hs.odd_harmonic(n, 2 * j + 1) * (-1) ** j * sgn / factorial(2 * m - 2 * j)
            rhs = rhs + _hp(2 * m - 2 * j) * c
        return lhs, rhs * (2 * factorial(2 * m))
    lhs = QPiPoly()
    for k in range(1, n + 1):
        lhs = lhs + moment_multi_angle(2 * m - 1, "sin", 2 * k - 1) * 2
    rhs = QPiPoly()
    for j in range(1, m + 1):
        c = hs.odd_harmonic(n, 2 * j, alternating=True) * (-1) ** (j - 1) / factorial(2 * m - 2 * j)
        rhs = rhs + _hp(2 * m - 2 * j) * c
    return lhs, rhs * (2 * factorial(2 * m - 1))


def lemma22_sides(part: str, m: int, n: int) -> tuple[QPiPoly, QPiPoly]:
    """Both sides of the moment identities for powers of cos and sin."""
    _check(part, m, n, LEMMA22_DOMAINS, "L2.2")
    ratio = hs.central_ratio(n)
    if part == "i":
        lhs = moment_trig_power(2 * m, "cos", 2 * n)
        rhs = QPiPoly()
        for j in range(m + 1):
            c = hs.zeta_star(n, j) * (-1) ** j / (4**j * factorial(2 * m - 2 * j + 1))
            rhs = rhs + _hp(2 * m - 2 * j + 1) * c
        return lhs, rhs * (factorial(2 * m) * ratio)
    if part == "ii":
        lhs = moment_trig_power(2 * m, "cos", 2 * n - 1)
        rhs = QPiPoly()
        for j in range(m + 1):
            c = hs.t_star(n, j) * (-1) ** j / factorial(2 * m - 2 * j)
            rhs = rhs + _hp(2 * m - 2 * j) * c
        return lhs, rhs * (Fraction(factorial(2 * m), 2) / (n * ratio))
    if part == "iii":
        lhs = moment_trig_power(2 * m - 1, "cos", 2 * n)
        rhs = QPiPoly()
        for j in range(m):
            c = hs.zeta_star(n, j) * (-1) ** j / (4**j * factorial(2 * m - 2 * j))
            rhs = rhs + _hp(2 * m - 2 * j) * c
        rhs = rhs + Fraction((-1) ** m, 4**m) * hs.nested_S(n, m)
        return lhs, rhs * (factorial(2 * m - 1) * ratio)
    lhs = moment_trig_power(2 * m - 1, "sin", 2 * n - 1)
    rhs = QPiPoly()
    for j in range(1, m + 1):
        c = hs.nested_T(n, j) * (-1) ** (j - 1) / factorial(2 * m - 2 * j)
        rhs = rhs + _hp(2 * m - 2 * j) * c
    return lhs, rhs * (Fraction(factorial(2 * m - 1), 2) / (n * ratio))


def recurrence_rhs(m: int, n: int) -> QPiPoly:
    """Right side of the one-step recurrence linking ``I(m, n)`` to ``I(m-1, .)``.

    ``I(m, n) = int_0^{pi/2} x**(2m) cos(x)**(2n) dx``; the recurrence lets the
    test-suite check the moments against each other without the closed form.
    """
    if m < 1 or n < 1:
        raise DomainError(f"recurrence needs m, n >= 1, got m={m}, n={n}")
    acc = QPiPoly()
    for n1 in range(1, n + 1):
        w = 1 / (hs.central_ratio(n1) * n1 * n1)
        acc = acc + moment_trig_power(2 * m - 2, "cos", 2 * n1) * w
    out = _hp(2 * m + 1) / (2 * m + 1) - acc * Fraction(2 * m * (2 * m - 1), 4)
    return out * hs.central_ratio(n)


def exact_grid(part_domains: Mapping[str, tuple[int, int]], m_max: int, n_max: int) -> Iterable[tuple[str, int, int]]:
    for part, (m_min, n_min) in part_domains.items():
        for m in range(m_min, m_max + 1):
            for n in range(n_min, n_max + 1):
                yield part, m, n
