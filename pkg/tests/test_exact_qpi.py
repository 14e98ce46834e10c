import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery.errors import DomainError
from apery.exact_qpi import (
    QPiPoly,
    expansion_basis,
    lemma21_sides,
    lemma22_sides,
    moment_multi_angle,
    moment_trig_power,
    qpi_arith,
    qpi_to_real,
    recurrence_rhs,
    trig_power_expand,
)
from apery.harmonic_sums import central_ratio
from apery.precision import PrecisionContext

PI = QPiPoly.pi_power(1)
HALF_PI = QPiPoly.half_pi()


def quad_oracle(f, dps=40):
    with mpmath.workdps(dps):
        return mpmath.quad(f, [0, mpmath.pi / 4, mpmath.pi / 2])


# ---- ring ----------------------------------------------------------------

def test_half_pi_squared():
    assert qpi_arith(HALF_PI, HALF_PI, "mul") == QPiPoly({2: F(1, 4)})


def test_add_cancels_pi():
    assert qpi_arith(1 + PI, 1 - PI, "add") == QPiPoly.constant(2)


def test_hand_expansion():
    # 2! * (1/2) * ((pi/2)^3/6 - (1/4)(pi/2))
    p = 2 * F(1, 2) * (QPiPoly.half_pi(3) / 6 - HALF_PI * F(1, 4))
    assert p == QPiPoly({3: F(1, 48), 1: F(-1, 8)})
    with mpmath.workdps(50):
        assert abs(qpi_to_real(p, PrecisionContext(50)) - (mpmath.pi**3 / 48 - mpmath.pi / 8)) < mpmath.mpf(10) ** -49


def test_zero_is_canonical():
    assert (PI - PI).coeffs == {}
    assert QPiPoly({3: 0, 1: F(2)}) == QPiPoly({1: 2})
    assert str(QPiPoly()) == "0"


polys = st.dictionaries(
    st.integers(0, 4),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    max_size=4,
).map(QPiPoly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == QPiPoly()


def test_to_real_examples():
    ctx = PrecisionContext(30)
    p = QPiPoly.pi_power(3, F(1, 24)) - QPiPoly.pi_power(1, F(1, 4))
    with mpmath.workdps(40):
        oracle = quad_oracle(lambda x: x**2 * (1 + mpmath.cos(2 * x)))
        assert abs(qpi_to_real(p, ctx) - oracle) < mpmath.mpf(10) ** -30
    assert mpmath.nstr(qpi_to_real(p, ctx), 10) == "0.5065300316"
    assert qpi_to_real(QPiPoly(), ctx) == 0
    assert mpmath.nstr(qpi_to_real(HALF_PI, PrecisionContext(20)), 20) == "1.5707963267948966192"


def test_to_real_survives_cancellation():
    # huge coefficients that nearly cancel numerically
    big = 10**40
    p = QPiPoly({1: F(big), 0: F(-31415926535897932384626433832795028841971, 10)})
    with mpmath.workdps(80):
        exact = big * mpmath.pi - mpmath.mpf(31415926535897932384626433832795028841971) / 10
    val = qpi_to_real(p, PrecisionContext(20))
    assert abs(val - exact) <= abs(exact) * mpmath.mpf(10) ** -20


# ---- moments -------------------------------------------------------------

def test_moment_examples():
    assert moment_multi_angle(0, "cos", 0) == HALF_PI
    assert moment_multi_angle(2, "cos", 2) == QPiPoly.pi_power(1, F(-1, 4))
    assert moment_multi_angle(1, "sin", 1) == QPiPoly.constant(1)
    assert moment_multi_angle(3, "sin", 0) == QPiPoly()


@pytest.mark.parametrize("p", range(0, 6))
@pytest.mark.parametrize("trig", ["cos", "sin"])
@pytest.mark.parametrize("a", range(0, 6))
def test_moment_against_quadrature(p, trig, a):
    fn = mpmath.cos if trig == "cos" else mpmath.sin
    with mpmath.workdps(40):
        oracle = quad_oracle(lambda x: x**p * fn(a * x))
        value = moment_multi_angle(p, trig, a).to_real(PrecisionContext(35))
        assert abs(value - oracle) < mpmath.mpf(10) ** -30


def test_trig_power_examples():
    assert trig_power_expand("cos", 2) == [(0, F(1, 2)), (2, F(1, 2))]
    assert trig_power_expand("cos", 1) == [(1, F(1))]
    assert trig_power_expand("sin", 3) == [(1, F(3, 4)), (3, F(-1, 4))]
    assert expansion_basis("sin", 3) == "sin"
    assert expansion_basis("sin", 4) == "cos"
    with pytest.raises(DomainError):
        trig_power_expand("cos", 0)


@pytest.mark.parametrize("trig", ["cos", "sin"])
@pytest.mark.parametrize("q", range(1, 13))
def test_trig_power_pointwise(trig, q):
    rng = random.Random(1000 * q + len(trig))
    fn = {"cos": mpmath.cos, "sin": mpmath.sin}
    basis = fn[expansion_basis(trig, q)]
    terms = trig_power_expand(trig, q)
    with mpmath.workdps(40):
        for _ in range(10):
            x = mpmath.mpf(rng.uniform(0, 1.5707))
            lhs = sum(mpmath.mpf(c.numerator) / c.denominator * basis(f * x) for f, c in terms)
            assert abs(lhs - fn[trig](x) ** q) < mpmath.mpf(10) ** -30


def test_even_cos_constant_term():
    for n in range(1, 9):
        assert dict(trig_power_expand("cos", 2 * n))[0] == central_ratio(n)


def test_moment_trig_power_examples():
    assert moment_trig_power(0, "cos", 2) == QPiPoly.pi_power(1, F(1, 4))
    assert moment_trig_power(2, "cos", 2) == QPiPoly({3: F(1, 48), 1: F(-1, 8)})
    assert moment_trig_power(1, "sin", 1) == QPiPoly.constant(1)


@pytest.mark.parametrize("n", range(1, 9))
def test_moment_trig_power_p0(n):
    assert moment_trig_power(0, "cos", 2 * n) == HALF_PI * central_ratio(n)


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("n", range(1, 7))
def test_recurrence(m, n):
    assert moment_trig_power(2 * m, "cos", 2 * n) == recurrence_rhs(m, n)


# ---- lemma sides -----------------------------------------------------------

def test_moment_identity_examples():
    lhs, rhs = lemma21_sides("i", 0, 1)
    assert lhs == rhs == HALF_PI
    lhs, rhs = lemma21_sides("i", 1, 1)
    assert lhs == rhs == QPiPoly({3: F(1, 24), 1: F(-1, 4)})
    lhs, rhs = lemma21_sides("iii", 0, 0)
    assert lhs == rhs == QPiPoly()


def test_power_identity_examples():
    for n in range(1, 9):
        lhs, rhs = lemma22_sides("i", 0, n)
        assert lhs == rhs == HALF_PI * central_ratio(n)
    lhs, rhs = lemma22_sides("i", 1, 1)
    assert lhs == rhs == QPiPoly({3: F(1, 48), 1: F(-1, 8)})
    lhs, rhs = lemma22_sides("iv", 2, 1)
    assert lhs == rhs == QPiPoly({2: F(3, 4), 0: F(-6)})


@pytest.mark.parametrize(
    "fn,part,m,n",
    [
        (lemma21_sides, "i", 0, 0),
        (lemma21_sides, "ii", 0, 1),
        (lemma21_sides, "iv", 0, 3),
        (lemma21_sides, "v", 1, 1),
        (lemma22_sides, "iii", 0, 1),
        (lemma22_sides, "i", 1, 0),
    ],
)
def test_identity_side_domain_errors(fn, part, m, n):
    with pytest.raises(DomainError):
        fn(part, m, n)


@pytest.mark.parametrize("part", ["i", "ii", "iii", "iv"])
def test_moment_identity_lhs_matches_quadrature(part):
    # LHS built from the finite odd-frequency expansions must equal the true integral
    m, n = 2, 3
    sgn = (-1) ** (n - 1)
    with mpmath.workdps(40):
        if part == "i":
            f = lambda x: x ** (2 * m) * (sgn + mpmath.cos(2 * n * x))
        elif part == "ii":
            f = lambda x: x ** (2 * m - 1) * (sgn + mpmath.cos(2 * n * x))
        elif part == "iii":
            f = lambda x: x ** (2 * m) * (sgn + mpmath.cos(2 * n * x)) / mpmath.cos(x)
        else:
            f = lambda x: x ** (2 * m - 1) * (1 - mpmath.cos(2 * n * x)) / mpmath.sin(x)
        oracle = quad_oracle(f)
        lhs, _ = lemma21_sides(part, m, n)
        assert abs(lhs.to_real(PrecisionContext(35)) - oracle) < mpmath.mpf(10) ** -25
