"""Working-precision handling on top of :mod:`mpmath`.

Real values throughout the package are ``mpmath.mpf`` instances; a
:class:`PrecisionContext` fixes how many digits they are computed with.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DomainError


@dataclass(frozen=True)
class PrecisionContext:
    """Requested significant digits plus guard digits used internally."""

    digits: int = 20
    guard: int = 10

    def __post_init__(self):
        if int(self.digits) < 1:
            raise DomainError(f"digits must be >= 1, got {self.digits}")
        if int(self.guard) < 0:
            raise DomainError(f"guard must be >= 0, got {self.guard}")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def eps(self):
        """Relative accuracy target ``10**-digits``."""
        return mpmath.mpf(10) ** (-self.digits)

    @property
    def working_eps(self):
        return mpmath.mpf(10) ** (-self.dps)

    def workdps(self, extra: int = 0):
        """Context manager setting mpmath to the working precision."""
        return mpmath.workdps(self.dps + extra)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits, self.guard)


DEFAULT = PrecisionContext()


def to_mpf(x):
    """Convert ``int``, ``Fraction``, ``str`` or ``mpf`` to ``mpf`` at current precision."""
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None and not isinstance(x, float):
        return mpmath.mpf(num) / den
    return mpmath.mpf(x)

