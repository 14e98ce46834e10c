"""Tanh-sinh (double-exponential) quadrature on the open interval (0, 1).

The substitution ``t = 1 / (1 + exp(-pi sinh u))`` sends (0, 1) to the real
line and makes the transformed integrand decay double exponentially, so
integrable endpoint singularities of logarithmic type cost nothing extra.
Nodes are never placed at 0 or 1.  The step is halved level by level, reusing
earlier nodes, until two successive levels agree.
"""
from __future__ import annotations

import functools
import math
from typing import Callable, NamedTuple

import mpmath

from .errors import AccuracyNotReached
from .precision import DEFAULT, PrecisionContext

MIN_LEVEL = 3
MAX_LEVEL = 12


class Estimate(NamedTuple):
    value: object
    error: object


def _u_max(dps: int) -> float:
    # beyond this |u| the weight t(1-t) cosh(u) is below 10**-(dps+10)
    return math.asinh((dps + 10) * math.log(10) / math.pi) + 0.5


@functools.lru_cache(maxsize=64)
def _level_nodes(level: int, dps: int) -> tuple[tuple[object, object], ...]:
    """Nodes ``(t, w)`` added at ``level``; ``w`` excludes the step ``h``."""
    with mpmath.workdps(dps):
        h = mpmath.mpf(2) ** (-level)
        kmax = int(_u_max(dps) * 2**level) + 1
        nodes = []
        for k in range(-kmax, kmax + 1):
            if level and k % 2 == 0:
                continue
            u = k * h
            e = mpmath.exp(mpmath.pi * mpmath.sinh(u))
            t = e / (1 + e)
            # dt/du = pi cosh(u) t (1 - t)
            nodes.append((t, mpmath.pi * mpmath.cosh(u) * t / (1 + e)))
        return tuple(nodes)


def de_quadrature(
    f: Callable[[object], object],
    ctx: PrecisionContext = DEFAULT,
    rel_tol=None,
    max_level: int = MAX_LEVEL,
) -> Estimate:
    """Integrate ``f`` over (0, 1).

    Stops once successive levels agree to ``rel_tol`` (default
    ``10**-(digits+2)``) relative to the current value; the reported error is
    the last level difference.  Raises :class:`AccuracyNotReached` at
    ``max_level``.
    """
    with ctx.workdps():
        tol = mpmath.mpf(10) ** (-(ctx.digits + 2)) if rel_tol is None else mpmath.mpf(rel_tol)
        # absolute floor for integrals that vanish
        floor = ctx.working_eps
        total = mpmath.mpf(0)
        prev = None
        for level in range(max_level + 1):
            acc = mpmath.mpf(0)
            for t, w in _level_nodes(level, ctx.dps):
                acc += w * f(t)
            total += acc
            value = total * mpmath.mpf(2) ** (-level)
            if prev is not None and level >= MIN_LEVEL:
                diff = abs(value - prev)
                if diff <= tol * abs(value) or diff <= floor:
                    return Estimate(value, diff)
            prev = value
        raise AccuracyNotReached(
            f"tanh-sinh quadrature did not converge by level {max_level}", value=value, bound=diff
        )
