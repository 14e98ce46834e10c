"""High-precision verification of integral representations for Apery-like series.

The package evaluates both sides of a family of identities relating series
with central binomial coefficients and nested harmonic sums to integrals of
polylogarithm-type kernels, and of the trigonometric moment lemmas behind
them, either exactly in Q[pi] or numerically at a chosen precision.
"""
from .errors import AccuracyNotReached, AperyError, CapacityError, ContractError, DomainError
from .exact_qpi import QPiPoly, lemma21_sides, lemma22_sides, moment_multi_angle, moment_trig_power, trig_power_expand
from .harmonic_sums import central_ratio, nested_S, nested_T, odd_harmonic, t_star, zeta_star
from .identity_registry import IdentityInstance, Selector, catalog, check, run_suite
from .numeric_eval import SeriesSpec, rhs_integral, series_accelerated, series_partial
from .precision import PrecisionContext
from .quadrature import de_quadrature
from .special_functions import alt_accel, chi, dirichlet, polylog_int, ti

__version__ = "0.1.0"
