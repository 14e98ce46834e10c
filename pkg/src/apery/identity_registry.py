"""Catalog of the identities and the machinery that checks instances of them.

Identity ids
------------
``L2.1.i``-``L2.1.iv``, ``L2.2.i``-``L2.2.iv``
    trigonometric moment identities, checked exactly in Q[pi];
``L2.3.i``, ``L2.3.ii``
    cosine expansions of ``Li_k(cos^2 x)`` / ``Li_k(sin^2 x)``, pointwise;
``GF3.6``, ``GF3.10``
    odd harmonic generating functions, pointwise in ``t``;
``T3.1``, ``T3.4``, ``T3.6``, ``T3.8``
    series against their integral representations;
``C3.2``, ``P3.3``, ``P3.5``, ``C3.7``
    series against closed forms in Dirichlet constants.
"""
from __future__ import annotations

import fnmatch
import itertools
import logging
import math
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Mapping

import mpmath

from . import exact_qpi
from . import numeric_eval as ne
from . import special_functions as sf
from .errors import AccuracyNotReached, AperyError, DomainError
from .precision import DEFAULT, PrecisionContext

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
STATUSES = (PASS, FAIL, INCONCLUSIVE)

DEFAULT_TOLERANCE = Fraction(1, 10**8)
LI1_TOLERANCE = Fraction(1, 10**10)


class UsageError(AperyError, ValueError):
    """A selector or configuration that cannot produce any work."""


# --- parameter domains ---------------------------------------------------------------

_PI_RE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?pi\s*(?:/\s*(\d+))?\s*$")


def parse_real(text) -> tuple[str, Any]:
    """Parse ``'pi/6'``, ``'2*pi/5'``, ``'1/4'`` or ``'0.75'``.

    Returns ``(canonical_text, value)`` where value is a ``Fraction`` or a
    ``('pi', Fraction)`` pair meaning a rational multiple of pi.
    """
    if isinstance(text, (int, Fraction)):
        return str(text), Fraction(text)
    s = str(text).strip()
    m = _PI_RE.match(s)
    if m:
        num = int(m.group(1) or 1)
        den = int(m.group(2) or 1)
        c = Fraction(num, den)
        canon = ("pi" if c.numerator == 1 else f"{c.numerator}*pi") + (f"/{c.denominator}" if c.denominator != 1 else "")
        return canon, ("pi", c)
    try:
        return s, Fraction(s)
    except ValueError:
        raise DomainError(f"cannot parse real parameter {text!r}") from None


def real_value(text, ctx: PrecisionContext):
    _, v = parse_real(text)
    with ctx.workdps():
        if isinstance(v, tuple):
            return mpmath.pi * v[1].numerator / v[1].denominator
        return mpmath.mpf(v.numerator) / v.denominator


def _as_float(text) -> float:
    _, v = parse_real(text)
    if isinstance(v, tuple):
        return math.pi * float(v[1])
    return float(v)


@dataclass(frozen=True)
class Bound:
    """Constraint ``low (<|<=) param (<|<=) high`` on one parameter."""

    param: str
    low: Any = None
    high: Any = None
    open_low: bool = False
    open_high: bool = False
    integer: bool = True
    note: str = ""

    def violation(self, value) -> str | None:
        if self.integer:
            if not isinstance(value, int) or isinstance(value, bool):
                return f"{self.param} must be an integer, got {value!r}"
            v = value
        else:
            v = _as_float(value)
        lo = None if self.low is None else (_as_float(self.low) if not self.integer else self.low)
        hi = None if self.high is None else (_as_float(self.high) if not self.integer else self.high)
        if lo is not None and (v <= lo if self.open_low else v < lo):
            return f"{self} violated by {self.param}={value}"
        if hi is not None and (v >= hi if self.open_high else v > hi):
            return f"{self} violated by {self.param}={value}"
        return None

    def __str__(self):
        if self.low is not None and self.high is not None:
            lo_op = "<" if self.open_low else "<="
            hi_op = "<" if self.open_high else "<="
            return f"{self.low} {lo_op} {self.param} {hi_op} {self.high}"
        if self.low is not None:
            return f"{self.param} {'>' if self.open_low else '>='} {self.low}"
        return f"{self.param} {'<' if self.open_high else '<='} {self.high}"


def _ints(**lows) -> tuple[Bound, ...]:
    return tuple(Bound(p, low=lo) for p, lo in lows.items())


@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    description: str
    mode: str  # "exact" or "numeric"
    parts: Mapping[str, tuple[Bound, ...]]
    defaults: Mapping[str, tuple] = field(default_factory=dict)
    notes: str = ""

    @property
    def instance_ids(self) -> tuple[str, ...]:
        return tuple(self.parts)


_X_BOUND = Bound("x", low=0, high="pi/2", open_low=True, open_high=True, integer=False)
_T_BOUND = Bound("t", low=0, high=1, open_low=True, open_high=True, integer=False)

_CATALOG: tuple[FamilyDescriptor, ...] = (
    FamilyDescriptor(
        "L2.1",
        "moments of x^p against (-1)^(n-1)+cos(2nx) and the odd-frequency kernels",
        "exact",
        {
            "L2.1.i": _ints(m=0, n=1),
            "L2.1.ii": (Bound("m", low=1, note="stated m >= 0 undefined at m = 0"), Bound("n", low=1)),
            "L2.1.iii": _ints(m=0, n=0),
            "L2.1.iv": _ints(m=1, n=0),
        },
        {"m": tuple(range(0, 7)), "n": tuple(range(0, 9))},
    ),
    FamilyDescriptor(
        "L2.2",
        "moments of x^p against powers of cos and sin",
        "exact",
        {
            "L2.2.i": _ints(m=0, n=1),
            "L2.2.ii": _ints(m=0, n=1),
            "L2.2.iii": _ints(m=1, n=1),
            "L2.2.iv": _ints(m=1, n=1),
        },
        {"m": tuple(range(0, 6)), "n": tuple(range(1, 9))},
    ),
    FamilyDescriptor(
        "L2.3",
        "cosine expansions of Li_k(cos^2 x) and Li_k(sin^2 x)",
        "numeric",
        {
            "L2.3.i": (Bound("k", low=1), _X_BOUND, Bound("N", low=1)),
            "L2.3.ii": (Bound("k", low=1), _X_BOUND, Bound("N", low=1)),
        },
        {"k": (1, 2, 3), "x": ("pi/6", "pi/4", "pi/3"), "N": (2000,)},
    ),
    FamilyDescriptor(
        "GF3.6",
        "sum (-1)^(n-1) O_n^(2j+1) t^(2n-1) = Ti_{2j+1}(t)/(1+t^2)",
        "numeric",
        {"GF3.6": (Bound("j", low=0), _T_BOUND)},
        {"j": (0, 1), "t": ("1/4", "1/2", "3/4")},
    ),
    FamilyDescriptor(
        "GF3.10",
        "sum (-1)^(n-1) Obar_n^(2j) t^(2n-1) = chi_{2j}(t)/(1+t^2)",
        "numeric",
        {"GF3.10": (Bound("j", low=1), _T_BOUND)},
        {"j": (1, 2), "t": ("1/4", "1/2", "3/4")},
    ),
    FamilyDescriptor(
        "T3.1", "central binomial series with zeta-star sums vs Li_{2j}(-t) integral", "numeric",
        {"T3.1": _ints(j=0, k=1)}, {"j": (0, 1, 2), "k": (1, 2, 3)},
    ),
    FamilyDescriptor(
        "T3.4", "inverse central binomial series with t-star sums vs Ti_{2j+1} integral", "numeric",
        {"T3.4": _ints(j=0, k=1)}, {"j": (0, 1, 2), "k": (1, 2, 3)},
    ),
    FamilyDescriptor(
        "T3.6", "central binomial series with nested S sums vs chi_{2j}(t)/t integral", "numeric",
        {"T3.6": (Bound("j", low=1, note="stated j >= 0; j = 0 inner sum undefined"), Bound("k", low=1))},
        {"j": (1, 2), "k": (1, 2, 3)},
    ),
    FamilyDescriptor(
        "T3.8", "inverse central binomial series with nested T sums vs chi_{2j}(t)/(1+t^2) integral", "numeric",
        {"T3.8": _ints(j=1, k=1)}, {"j": (1, 2), "k": (1, 2, 3)},
    ),
    FamilyDescriptor("C3.2", "k = 1 zeta-star series equals 2 eta(2j+1)", "numeric", {"C3.2": _ints(j=0)}, {"j": tuple(range(5))}),
    FamilyDescriptor(
        "P3.3", "k = 2 zeta-star series as a quadratic form in eta values", "numeric",
        {"P3.3": _ints(j=0)}, {"j": tuple(range(4))},
    ),
    FamilyDescriptor(
        "P3.5", "k = 1 t-star series as a quadratic form in beta values", "numeric",
        {"P3.5": _ints(j=0)}, {"j": tuple(range(4))},
    ),
    FamilyDescriptor("C3.7", "k = 1 nested S series equals 4 lambda(2j+1)", "numeric", {"C3.7": _ints(j=1)}, {"j": (1, 2, 3, 4)}),
)

_PART_INDEX = {pid: fam for fam in _CATALOG for pid in fam.parts}


def catalog() -> list[FamilyDescriptor]:
    return list(_CATALOG)


def identity_ids() -> list[str]:
    return list(_PART_INDEX)


def domain_of(identity_id: str) -> tuple[Bound, ...]:
    fam = _PART_INDEX.get(identity_id)
    if fam is None:
        raise DomainError(f"unknown identity id {identity_id!r}")
    return fam.parts[identity_id]


def _canonical_params(identity_id: str, params: Mapping[str, Any]) -> dict[str, Any]:
    out = {}
    for name, value in params.items():
        if name in ("x", "t"):
            out[name] = parse_real(value)[0]
        else:
            out[name] = value
    return out


def validate(identity_id: str, params: Mapping[str, Any]) -> None:
    """Raise :class:`DomainError` naming the first violated constraint."""
    domain = domain_of(identity_id)
    names = {b.param for b in domain}
    extra = set(params) - names - ({"N"} if identity_id.startswith("GF") else set())
    if extra:
        raise DomainError(f"{identity_id}: unexpected parameters {sorted(extra)}")
    for b in domain:
        if b.param not in params:
            raise DomainError(f"{identity_id}: missing parameter {b.param!r}")
        msg = b.violation(params[b.param])
        if msg:
            raise DomainError(f"{identity_id}: {msg}")
    if "N" in params and identity_id.startswith("GF"):
        n = params["N"]
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"{identity_id}: N >= 1 violated by N={n}")


@dataclass
class IdentityInstance:
    id: str
    params: dict[str, Any]
    mode: str = ""
    tolerance: Fraction | None = None

    def __post_init__(self):
        fam = _PART_INDEX.get(self.id)
        if fam is None:
            raise DomainError(f"unknown identity id {self.id!r}")
        self.params = _canonical_params(self.id, self.params)
        if not self.mode:
            self.mode = fam.mode
        if self.mode == "numeric" and self.tolerance is None and self.id not in ("GF3.6", "GF3.10"):
            self.tolerance = DEFAULT_TOLERANCE

    def sort_key(self):
        return (self.id, tuple((name, _as_float(v)) for name, v in sorted(self.params.items())))


@dataclass
class ReportEntry:
    id: str
    params: dict[str, Any]
    lhs: str
    rhs: str
    abs_err: str
    rel_err: str
    status: str
    elapsed_seconds: float = 0.0
    tolerance: str = ""
    bound: str = ""
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "status": self.status,
            "elapsed_seconds": self.elapsed_seconds,
            "tolerance": self.tolerance,
            "bound": self.bound,
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ReportEntry":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})


@dataclass
class VerificationReport:
    entries: list[ReportEntry]
    digits: int
    guard: int
    timestamp: str = ""
    version: str = SCHEMA_VERSION
    settings: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for e in self.entries:
            counts[e.status] += 1
        counts["total"] = len(self.entries)
        return counts


@dataclass(frozen=True)
class NumericSettings:
    """Knobs of the numeric evaluators shared by every check."""

    horizon: int = ne.DEFAULT_HORIZON
    ladder_depth: int = ne.DEFAULT_LADDER_DEPTH
    series_digits: int = ne.DEFAULT_TARGET_DIGITS

    def as_dict(self) -> dict:
        return {"horizon": self.horizon, "ladder_depth": self.ladder_depth, "series_digits": self.series_digits}


# --- checking ---------------------------------------------------------------------------

def _fmt(x, digits: int) -> str:
    if x == 0:
        return "0"
    return mpmath.nstr(x, digits, min_fixed=-4, max_fixed=digits + 1, strip_zeros=False)


def _fmt_err(x) -> str:
    return "0" if x == 0 else mpmath.nstr(x, 6)


def closed_form(identity_id: str, j: int, ctx: PrecisionContext):
    """Closed-form right side of C3.2, P3.3, P3.5 or C3.7."""
    with ctx.workdps():
        if identity_id == "C3.2":
            return 2 * sf.dirichlet("eta", 2 * j + 1, ctx)
        if identity_id == "P3.3":
            return 2 * mpmath.fsum(
                (-1) ** i * sf.dirichlet("eta", i, ctx) * sf.dirichlet("eta", 2 * j - i + 2, ctx) for i in range(2 * j + 3)
            )
        if identity_id == "P3.5":
            return 8 * mpmath.fsum(
                (-1) ** i * sf.dirichlet("beta", i + 1, ctx) * sf.dirichlet("beta", 2 * j - i + 1, ctx) for i in range(2 * j + 1)
            )
        if identity_id == "C3.7":
            return 4 * sf.dirichlet("lambda", 2 * j + 1, ctx)
    raise DomainError(f"{identity_id} has no closed form")


CLOSED_FORM_SERIES = {
    "C3.2": ("zeta_family", 1),
    "P3.3": ("zeta_family", 2),
    "P3.5": ("t_family", 1),
    "C3.7": ("nested_S_family", 1),
}


def _numeric_entry(inst, lhs, rhs, lhs_err, rhs_err, tol, ctx, relative=True, message=""):
    with ctx.workdps():
        diff = abs(lhs - rhs)
        rel = diff / abs(rhs) if rhs != 0 else diff
        tol_m = mpmath.mpf(tol.numerator) / tol.denominator if isinstance(tol, Fraction) else tol
        ok = (rel if relative else diff) <= tol_m
        return dict(
            lhs=_fmt(lhs, ctx.digits),
            rhs=_fmt(rhs, ctx.digits),
            abs_err=_fmt_err(diff),
            rel_err=_fmt_err(rel),
            status=PASS if ok else FAIL,
            tolerance=("rel " if relative else "abs ") + _fmt_err(tol_m),
            bound=_fmt_err(lhs_err + rhs_err),
            message=message,
        )


def _check_body(inst: IdentityInstance, ctx: PrecisionContext, settings: NumericSettings) -> dict:
    iid, p = inst.id, inst.params
    if iid.startswith(("L2.1.", "L2.2.")):
        part = iid.split(".")[-1]
        sides = exact_qpi.lemma21_sides if iid.startswith("L2.1") else exact_qpi.lemma22_sides
        lhs, rhs = sides(part, p["m"], p["n"])
        diff = lhs - rhs
        return dict(
            lhs=str(lhs),
            rhs=str(rhs),
            abs_err="0" if diff.is_zero() else _fmt_err(abs(diff.to_real(ctx))),
            rel_err="0" if diff.is_zero() else _fmt_err(abs(diff.to_real(ctx)) / max(abs(rhs.to_real(ctx)), ctx.working_eps)),
            status=PASS if diff.is_zero() else FAIL,
            tolerance="exact",
            bound="0",
        )
    series_kw = dict(horizon=settings.horizon, depth=settings.ladder_depth, target_digits=settings.series_digits)
    if iid in ne.ID_FAMILY:
        spec = ne.SeriesSpec(iid, p["j"], p["k"])
        s = ne.series_accelerated(spec, ctx, **series_kw)
        r = ne.rhs_integral(iid, p["j"], p["k"], ctx)
        return _numeric_entry(inst, s.value, r.value, s.error, r.error, inst.tolerance, ctx)
    if iid in CLOSED_FORM_SERIES:
        family, k = CLOSED_FORM_SERIES[iid]
        s = ne.series_accelerated(ne.SeriesSpec(family, p["j"], k), ctx, **series_kw)
        c = closed_form(iid, p["j"], ctx)
        return _numeric_entry(inst, s.value, c, s.error, 0, inst.tolerance, ctx)
    if iid.startswith("L2.3."):
        variant = iid.split(".")[-1]
        k, N = p["k"], p["N"]
        x = real_value(p["x"], ctx)
        with ctx.workdps():
            target = ne.lemma23_target(variant, k, x, ctx)
            if k == 1:
                closed = -2 * mpmath.log(mpmath.sin(x) if variant == "i" else mpmath.cos(x))
                return _numeric_entry(
                    inst, target, closed, 0, 0, LI1_TOLERANCE, ctx,
                    message="k=1 checked through Li_1(cos^2 x) = -2 log sin x",
                )
            est = ne.lemma23_partial(variant, k, x, N, ctx)
            tol = ne.lemma23_tail_bound(k, N) + est.error + 10 * ctx.working_eps
            return _numeric_entry(inst, est.value, target, est.error, 0, tol, ctx, relative=False,
                                  message="tolerance = analytic tail bound")
    if iid in ("GF3.6", "GF3.10"):
        kind = "eq36" if iid == "GF3.6" else "eq310"
        t = real_value(p["t"], ctx)
        N = p.get("N") or ne.gf_default_terms(t, ctx)
        with ctx.workdps():
            partial = ne.gf_partial(kind, p["j"], t, N, ctx)
            kernel = ne.gf_kernel(kind, p["j"], t, ctx)
            # truncation allowance plus rounding, which dominates once t^(2N) is tiny
            tol = 10 * t ** (2 * N) + 10 * ctx.working_eps * max(1, abs(kernel))
            return _numeric_entry(inst, partial, kernel, 0, 0, tol, ctx, relative=False,
                                  message=f"N={N}, tolerance = 10 t^(2N) + rounding")
    raise DomainError(f"no checker for {iid!r}")


def check(instance: IdentityInstance, ctx: PrecisionContext = DEFAULT, settings: NumericSettings = NumericSettings()) -> ReportEntry:
    """Evaluate both sides of one instance.

    Out-of-domain parameters raise :class:`DomainError`; an evaluator that
    cannot reach its accuracy target yields an ``INCONCLUSIVE`` entry.
    """
    validate(instance.id, instance.params)
    start = time.perf_counter()
    try:
        body = _check_body(instance, ctx, settings)
    except AccuracyNotReached as exc:
        value = "" if exc.value is None else _fmt(exc.value, ctx.digits)
        body = dict(lhs=value, rhs="", abs_err="", rel_err="", status=INCONCLUSIVE,
                    bound="" if exc.bound is None else _fmt_err(exc.bound), message=str(exc))
    elapsed = round(time.perf_counter() - start, 6)
    return ReportEntry(id=instance.id, params=dict(instance.params), elapsed_seconds=elapsed, **body)


# --- suites -------------------------------------------------------------------------------

@dataclass
class Selector:
    """Globs over identity ids (comma separated) plus explicit parameter value lists.

    Parameters absent from ``ranges`` fall back to the family defaults;
    ``limits`` caps integer parameters from above (``{"m": 4}`` means m <= 4).
    """

    pattern: str = "*"
    ranges: dict[str, tuple] = field(default_factory=dict)
    limits: dict[str, int] = field(default_factory=dict)


def expand(selector: Selector) -> list[IdentityInstance]:
    patterns = [pat.strip() for pat in selector.pattern.split(",") if pat.strip()]
    out = []
    for fam in _CATALOG:
        for pid, domain in fam.parts.items():
            if not any(fnmatch.fnmatchcase(pid, pat) or fnmatch.fnmatchcase(fam.id, pat) for pat in patterns):
                continue
            names = [b.param for b in domain]
            axes = []
            for name in names:
                values = selector.ranges.get(name, fam.defaults.get(name, ()))
                if name in selector.limits:
                    values = tuple(v for v in values if v <= selector.limits[name])
                axes.append(values)
            if "N" in selector.ranges and "N" not in names and pid.startswith("GF"):
                names.append("N")
                axes.append(selector.ranges["N"])
            skipped = 0
            for combo in itertools.product(*axes):
                params = dict(zip(names, combo))
                try:
                    validate(pid, params)
                except DomainError:
                    skipped += 1
                    continue
                out.append(IdentityInstance(pid, params))
            if skipped:
                log.info("%s: %d grid points outside the domain (%s) skipped", pid, skipped,
                         ", ".join(str(b) for b in domain))
    out.sort(key=IdentityInstance.sort_key)
    return out


def _check_batch(args):
    batch, ctx, settings = args
    return [check(inst, ctx, settings) for inst in batch]


def _batches(instances: list[IdentityInstance]) -> list[list[int]]:
    """Index groups for workers; L2.3 instances with equal k share cached coefficients."""
    groups: dict[Any, list[int]] = {}
    for i, inst in enumerate(instances):
        key = ("L2.3", inst.params["k"]) if inst.id.startswith("L2.3.") else i
        groups.setdefault(key, []).append(i)
    # largest batches first keeps the pool busy
    return sorted(groups.values(), key=len, reverse=True)


def run_suite(
    selector: Selector | str,
    ctx: PrecisionContext = DEFAULT,
    settings: NumericSettings = NumericSettings(),
    workers: int = 1,
) -> VerificationReport:
    """Check every in-domain instance picked by ``selector``.

    Entries come back in deterministic order (id, then parameter values)
    regardless of ``workers``.
    """
    if isinstance(selector, str):
        selector = Selector(selector)
    instances = expand(selector)
    if not instances:
        raise UsageError(f"selector {selector.pattern!r} matches no in-domain instances")
    if workers > 1:
        batches = _batches(instances)
        jobs = [([instances[i] for i in b], ctx, settings) for b in batches]
        entries: list = [None] * len(instances)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for idx, results in zip(batches, pool.map(_check_batch, jobs)):
                for i, entry in zip(idx, results):
                    entries[i] = entry
    else:
        entries = [check(inst, ctx, settings) for inst in instances]
    return VerificationReport(
        entries=entries,
        digits=ctx.digits,
        guard=ctx.guard,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        settings=settings.as_dict(),
    )
