"""Finite nested harmonic sums with quadratic weights.

All tables are built column by column in the depth ``j`` using one-step
recurrences of the form ``X_j(n) = X_j(n-1) + w(n) * X_{j-1}(n)``, which is
O(n * j) work.  Exact tables hold :class:`~fractions.Fraction` values and are
capped (denominators grow like lcm of squares); float columns are computed
with mpmath at the caller's precision and are meant for long partial sums.

Kinds
-----
``zeta_star``      sum over n >= n_1 >= ... >= n_j >= 1 of prod 1/n_i^2
``t_star``         same with weights 1/(2 n_i - 1)^2
``odd_h``          sum_{k<=n} 1/(2k-1)^m
``alt_odd_h``      sum_{k<=n} (-1)^(k-1)/(2k-1)^m
``nested_S``       zeta_star-type chain weighted by 4^{n_j}/binom(2 n_j, n_j)
``nested_T``       t_star-type chain ending in n_{j-1} > n_j >= 0 weighted by
                   binom(2 n_j, n_j) / ((2 n_j + 1) 4^{n_j})
``central_ratio``  binom(2n, n) / 4^n
"""
from __future__ import annotations

import threading
from fractions import Fraction

import mpmath

from .errors import CapacityError, DomainError
from .precision import PrecisionContext

EXACT_N_MAX = 64
EXACT_J_MAX = 16

KINDS = ("zeta_star", "t_star", "odd_h", "alt_odd_h", "nested_S", "nested_T", "central_ratio")


class HarmonicTable:
    """Column-wise table of one nested-sum kind.

    ``get(n, j)`` returns the entry for index ``n`` and depth (or order) ``j``.
    Columns are extended on demand up to ``n_max``/``j_max``; beyond those a
    :class:`CapacityError` is raised.  In float mode entries are ``mpf`` at the
    precision of ``ctx``.
    """

    def __init__(self, kind: str, n_max: int = EXACT_N_MAX, j_max: int = EXACT_J_MAX, ctx: PrecisionContext | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.n_max = n_max
        self.j_max = j_max
        self.ctx = ctx
        self.exact = ctx is None
        self._columns: dict[int, list] = {}
        self._lock = threading.Lock()

    def _num(self, x):
        return Fraction(x) if self.exact else mpmath.mpf(x)

    def _ratio_column(self):
        col = self._columns.get(-1)
        if col is None:
            one = self._num(1)
            col = [one]
            for n in range(1, self.n_max + 1):
                col.append(col[-1] * (2 * n - 1) / (2 * n))
            self._columns[-1] = col
        return col

    def _weight(self, n: int):
        if self.kind in ("zeta_star", "nested_S"):
            return self._num(1) / (n * n)
        return self._num(1) / ((2 * n - 1) ** 2)

    def _build(self, j: int) -> list:
        kind = self.kind
        N = self.n_max
        zero, one = self._num(0), self._num(1)
        if kind == "central_ratio":
            return self._ratio_column()
        if kind in ("odd_h", "alt_odd_h"):
            if j < 1:
                raise DomainError(f"{kind}: order m must be >= 1, got {j}")
            col = [zero]
            if kind == "odd_h":
                for k in range(1, N + 1):
                    col.append(col[-1] + one / (2 * k - 1) ** j)
                return col
            # alternating: even entries add the positive pair difference to the
            # previous even entry, so no cancellation accumulates
            for k in range(1, N + 1):
                if k % 2:
                    col.append(col[k - 1] + one / (2 * k - 1) ** j)
                else:
                    col.append(col[k - 2] + (one / (2 * k - 3) ** j - one / (2 * k - 1) ** j))
            return col
        if kind == "nested_T":
            if j < 1:
                raise DomainError(f"nested_T: depth j must be >= 1, got {j}")
            if j == 1:
                ratio = self._ratio_column()
                col = [zero]
                for n in range(1, N + 1):
                    col.append(col[-1] + ratio[n - 1] / (2 * n - 1))
                return col
        elif j == 0:
            if kind == "nested_S":
                return [one / r for r in self._ratio_column()]
            return [one] * (N + 1)
        prev = self._column(j - 1)
        col = [zero]
        for n in range(1, N + 1):
            col.append(col[-1] + self._weight(n) * prev[n])
        return col

    def _column(self, j: int) -> list:
        col = self._columns.get(j)
        if col is None:
            col = self._build(j)
            self._columns[j] = col
        return col

    def column(self, j: int = 0) -> list:
        """Entries for ``n = 0..n_max`` at depth/order ``j``."""
        if j > self.j_max:
            raise CapacityError(f"{self.kind}: depth {j} exceeds table limit j_max={self.j_max}")
        with self._lock:
            return self._column(j)

    def get(self, n: int, j: int = 0):
        if n < 0:
            raise DomainError(f"{self.kind}: n must be >= 0, got {n}")
        if n > self.n_max:
            raise CapacityError(f"{self.kind}: n={n} exceeds table limit n_max={self.n_max}")
        return self.column(j)[n]


_exact_tables: dict[str, HarmonicTable] = {}
_exact_lock = threading.Lock()


def exact_table(kind: str) -> HarmonicTable:
    with _exact_lock:
        table = _exact_tables.get(kind)
        if table is None:
            table = _exact_tables[kind] = HarmonicTable(kind)
        return table


def zeta_star(n: int, j: int) -> Fraction:
    """Exact multiple harmonic star sum of depth ``j`` with squared weights."""
    if j < 0:
        raise DomainError(f"depth j must be >= 0, got {j}")
    return exact_table("zeta_star").get(n, j)


def t_star(n: int, j: int) -> Fraction:
    """Odd-index analogue of :func:`zeta_star` (weights ``1/(2 n_i - 1)**2``)."""
    if j < 0:
        raise DomainError(f"depth j must be >= 0, got {j}")
    return exact_table("t_star").get(n, j)


def odd_harmonic(n: int, m: int, alternating: bool = False) -> Fraction:
    return exact_table("alt_odd_h" if alternating else "odd_h").get(n, m)


def central_ratio(n: int) -> Fraction:
    """``binom(2n, n) / 4**n``; unbounded ``n`` since it is a single product."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n <= EXACT_N_MAX:
        return exact_table("central_ratio").get(n)
    from math import comb

    return Fraction(comb(2 * n, n), 4**n)


def nested_S(n: int, j: int) -> Fraction:
    if n < 1:
        raise DomainError(f"nested_S: n must be >= 1, got {n}")
    if j < 0:
        raise DomainError(f"nested_S: depth j must be >= 0, got {j}")
    return exact_table("nested_S").get(n, j)


def nested_T(n: int, j: int) -> Fraction:
    if n < 1:
        raise DomainError(f"nested_T: n must be >= 1, got {n}")
    return exact_table("nested_T").get(n, j)


def float_table(kind: str, n_max: int, ctx: PrecisionContext, j_max: int = EXACT_J_MAX) -> HarmonicTable:
    """A float-mode table; build columns inside ``ctx.workdps()``."""
    return HarmonicTable(kind, n_max=n_max, j_max=j_max, ctx=ctx)


def float_column(kind: str, j: int, n_max: int, ctx: PrecisionContext) -> list:
    """Float column ``n = 0..n_max`` of ``kind`` at depth/order ``j``."""
    with ctx.workdps():
        return float_table(kind, n_max, ctx).column(j)


def harmonic_float(kind: str, n: int, j: int, ctx: PrecisionContext):
    """Single float entry; prefer :func:`float_column` for many ``n``."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "central_ratio":
        with ctx.workdps():
            # binom(2n,n)/4^n through log-gamma avoids building the column
            return +mpmath.exp(mpmath.loggamma(2 * n + 1) - 2 * mpmath.loggamma(n + 1) - n * mpmath.log(4))
    return float_column(kind, j, n, ctx)[n]
