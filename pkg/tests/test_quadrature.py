import mpmath
import pytest

from apery.errors import AccuracyNotReached
from apery.precision import PrecisionContext
from apery.quadrature import de_quadrature

CTX = PrecisionContext(30)


def check(f, expected, ctx=CTX):
    est = de_quadrature(f, ctx)
    with mpmath.workdps(60):
        err = abs(est.value - expected)
        assert err < mpmath.mpf(10) ** -ctx.digits * max(1, abs(expected))
    return est


def test_rational():
    with mpmath.workdps(60):
        check(lambda t: 1 / (1 + t), mpmath.log(2))


def test_log_endpoint():
    check(lambda t: mpmath.log(t), -1)


def test_log_kernel():
    with mpmath.workdps(60):
        expected = -(mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2)
    check(lambda t: mpmath.log(t) / 2 / (1 - t / 2), expected)


def test_inverse_sqrt_singularity():
    check(lambda t: 1 / mpmath.sqrt(t), 2)


def test_log_square_endpoint():
    with mpmath.workdps(60):
        expected = 3 * mpmath.zeta(3) / 2
    check(lambda t: mpmath.log(t) ** 2 / (1 + t), expected)


def test_vanishing_integral():
    est = de_quadrature(lambda t: t - mpmath.mpf(1) / 2, CTX)
    assert abs(est.value) < mpmath.mpf(10) ** -30


def test_error_estimate_reported():
    with mpmath.workdps(60):
        expected = mpmath.e - 1
    est = check(lambda t: mpmath.exp(t), expected)
    assert est.error <= mpmath.mpf(10) ** -25


def test_level_cap():
    # a wildly oscillating integrand cannot converge in two levels
    with pytest.raises(AccuracyNotReached) as info:
        de_quadrature(lambda t: mpmath.sin(500 / t), PrecisionContext(20), max_level=4)
    assert info.value.value is not None
