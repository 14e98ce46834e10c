import itertools
from fractions import Fraction as F
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apery.errors import CapacityError, DomainError
from apery.harmonic_sums import (
    EXACT_N_MAX,
    HarmonicTable,
    central_ratio,
    float_column,
    harmonic_float,
    nested_S,
    nested_T,
    odd_harmonic,
    t_star,
    zeta_star,
)
from apery.precision import PrecisionContext


# ---- brute-force chain enumeration -----------------------------------------

def chains(n, j, low=1):
    """Weakly decreasing chains n >= n_1 >= ... >= n_j >= low."""
    return [c for c in itertools.product(range(low, n + 1), repeat=j) if all(a >= b for a, b in zip(c, c[1:]))]


def brute_zeta_star(n, j):
    if j == 0:
        return F(1)
    return sum((_prod(F(1, a * a) for a in c) for c in chains(n, j)), F(0))


def _prod(it):
    p = F(1)
    for x in it:
        p *= x
    return p


def brute_t_star(n, j):
    if j == 0:
        return F(1)
    return sum((_prod(F(1, (2 * a - 1) ** 2) for a in c) for c in chains(n, j)), F(0))


def ratio(q):
    return F(comb(2 * q, q), 4**q)


def brute_nested_S(n, j):
    if j == 0:
        return 1 / ratio(n)
    return sum((_prod(F(1, a * a) for a in c) / ratio(c[-1]) for c in chains(n, j)), F(0))


def brute_nested_T(n, j):
    total = F(0)
    for head in chains(n, j - 1) if j > 1 else [()]:
        top = head[-1] if head else n
        for q in range(0, top):
            total += _prod(F(1, (2 * a - 1) ** 2) for a in head) * ratio(q) / (2 * q + 1)
    return total


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("j", range(0, 4))
def test_star_sums_match_enumeration(n, j):
    assert zeta_star(n, j) == brute_zeta_star(n, j)
    assert t_star(n, j) == brute_t_star(n, j)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("j", range(0, 4))
def test_nested_S_matches_enumeration(n, j):
    assert nested_S(n, j) == brute_nested_S(n, j)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("j", range(1, 4))
def test_nested_T_matches_enumeration(n, j):
    assert nested_T(n, j) == brute_nested_T(n, j)


def test_examples():
    assert zeta_star(7, 0) == 1
    assert zeta_star(2, 1) == F(5, 4)
    assert zeta_star(2, 2) == F(21, 16)
    assert t_star(1, 3) == 1
    assert t_star(2, 1) == F(10, 9)
    assert t_star(3, 1) == F(259, 225)
    assert odd_harmonic(1, 5) == odd_harmonic(1, 5, alternating=True) == 1
    assert odd_harmonic(2, 1) == F(4, 3)
    assert odd_harmonic(3, 2, alternating=True) == F(209, 225)
    assert odd_harmonic(0, 3) == 0
    assert central_ratio(0) == 1
    assert central_ratio(1) == F(1, 2)
    assert central_ratio(2) == F(3, 8)
    assert nested_S(1, 1) == 2
    assert nested_S(2, 1) == F(8, 3)
    assert nested_S(3, 0) == F(16, 5)
    assert nested_T(1, 1) == 1
    assert nested_T(1, 2) == 1
    assert nested_T(2, 1) == F(7, 6)


def test_recurrences_on_grid():
    for n in range(1, EXACT_N_MAX + 1):
        assert central_ratio(n) == central_ratio(n - 1) * F(2 * n - 1, 2 * n)
        for j in range(1, 6):
            assert zeta_star(n, j) == zeta_star(n - 1, j) + F(1, n * n) * zeta_star(n, j - 1)
            assert t_star(n, j) == t_star(n - 1, j) + F(1, (2 * n - 1) ** 2) * t_star(n, j - 1)
            if n >= 2:
                assert nested_S(n, j) == nested_S(n - 1, j) + F(1, n * n) * nested_S(n, j - 1)
            if n >= 2 and j >= 2:
                assert nested_T(n, j) == nested_T(n - 1, j) + F(1, (2 * n - 1) ** 2) * nested_T(n, j - 1)


def test_empty_depth_convention():
    for n in range(EXACT_N_MAX + 1):
        assert zeta_star(n, 0) == t_star(n, 0) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, EXACT_N_MAX), st.integers(0, 6), st.sampled_from(["zeta_star", "t_star", "odd_h", "nested_S"]))
def test_monotone_in_n(n, j, kind):
    fn = {
        "zeta_star": zeta_star,
        "t_star": t_star,
        "odd_h": lambda n, j: odd_harmonic(n, j + 1),
        "nested_S": nested_S,
    }[kind]
    if kind == "nested_S" and (n < 2 or j == 0):
        return
    assert fn(n, j) >= fn(n - 1, j)


def test_t1_consistency():
    assert nested_T(1, 1) == 1


def test_capacity_and_domain():
    with pytest.raises(CapacityError):
        zeta_star(EXACT_N_MAX + 1, 1)
    with pytest.raises(DomainError):
        zeta_star(3, -1)
    with pytest.raises(DomainError):
        nested_S(0, 1)
    with pytest.raises(DomainError):
        nested_T(0, 1)
    with pytest.raises(DomainError):
        central_ratio(-1)
    with pytest.raises(ValueError):
        HarmonicTable("nope")


def test_central_ratio_beyond_table():
    assert central_ratio(100) == F(comb(200, 100), 4**100)


# ---- float mode --------------------------------------------------------------

@pytest.mark.parametrize("kind", ["zeta_star", "t_star", "odd_h", "alt_odd_h", "nested_S", "nested_T"])
def test_float_matches_exact(kind):
    ctx = PrecisionContext(30)
    exact = HarmonicTable(kind)
    j = 2
    col = float_column(kind, j, 50, ctx)
    with mpmath.workdps(40):
        for n in range(1, 51):
            e = exact.get(n, j)
            ref = mpmath.mpf(e.numerator) / e.denominator
            assert abs(col[n] - ref) <= abs(ref) * mpmath.mpf(10) ** -35


def test_float_large_n():
    ctx = PrecisionContext(30)
    col = float_column("t_star", 1, 10_000, ctx)
    assert all(a < b for a, b in zip(col[1:], col[2:]))
    with mpmath.workdps(40):
        lam2 = mpmath.pi**2 / 8
        assert col[-1] < lam2
        assert lam2 - col[-1] < mpmath.mpf(1) / (4 * 9_999)
    z = harmonic_float("zeta_star", 10_000, 1, ctx)
    with mpmath.workdps(40):
        # tail of sum 1/n^2 beyond N is about 1/N
        assert abs(mpmath.zeta(2) - z - mpmath.mpf(1) / 10_000) < mpmath.mpf(1) / 10_000**2


def test_central_ratio_float():
    ctx = PrecisionContext(30)
    r = harmonic_float("central_ratio", 10**5, 0, ctx)
    assert 0 < r < 1 / mpmath.sqrt(mpmath.pi * 10**5) * mpmath.mpf("1.01")
    e = central_ratio(40)
    with mpmath.workdps(40):
        assert abs(harmonic_float("central_ratio", 40, 0, ctx) - mpmath.mpf(e.numerator) / e.denominator) < mpmath.mpf(10) ** -32
