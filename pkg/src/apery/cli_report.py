"""Command line front end, report serialization and the persistent constant cache.

Usage::

    apery list
    apery eval --series t_family --j 0 --k 1 --digits 15
    apery eval --constant zeta --s 3 --digits 40
    apery verify --family T3.1 --j 0..2 --k 1..3 --digits 20 --out r.json
    apery verify --suite exact

Exit status of ``verify`` is 0 only when no entry is FAIL or INCONCLUSIVE
(``--allow-inconclusive`` turns the latter into warnings).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import mpmath

from . import identity_registry as reg
from . import numeric_eval as ne
from . import special_functions as sf
from .errors import AperyError
from .precision import PrecisionContext

log = logging.getLogger(__name__)

FORMATS = ("json", "csv", "markdown")
SUITES = {
    "exact": "L2.1.*,L2.2.*",
    "closed": "C3.2,P3.3,P3.5,C3.7",
    "series": "T3.*",
    "pointwise": "L2.3.*,GF3.*",
    "all": "*",
}
_EXT_FORMAT = {".json": "json", ".csv": "csv", ".md": "markdown", ".markdown": "markdown"}
CSV_FIELDS = ("id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "elapsed_seconds", "tolerance", "bound", "message")


# --- constant cache --------------------------------------------------------------------

def default_cache_path() -> Path:
    root = os.environ.get("APERY_CACHE_DIR")
    base = Path(root) if root else Path.home() / ".cache" / "apery"
    return base / "constants.txt"


class ConstantCache:
    """Flat text file of ``kind s digits value`` lines.

    Only the most precise entry per ``(kind, s)`` is kept.  A request is served
    when the stored digit count is at least the requested one; lower-precision
    entries are recomputed by the caller and replaced.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._entries: dict[tuple[str, int], tuple[int, str]] = {}
        self._dirty = False
        self.hits = 0

    def load(self) -> "ConstantCache":
        self._entries.clear()
        if not self.path.exists():
            return self
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                kind, s, digits, value = line.split()
                if kind not in sf.DIRICHLET_KINDS:
                    raise ValueError(f"unknown kind {kind!r}")
                mpmath.mpf(value)
                key, digits = (kind, int(s)), int(digits)
            except ValueError as exc:
                log.warning("constant cache %s line %d skipped: %s", self.path, lineno, exc)
                self._dirty = True
                continue
            if key not in self._entries or self._entries[key][0] < digits:
                self._entries[key] = (digits, value)
        return self

    def get(self, kind: str, s: int, digits: int) -> str | None:
        hit = self._entries.get((kind, int(s)))
        if hit is None or hit[0] < digits:
            return None
        self.hits += 1
        return hit[1]

    def put(self, kind: str, s: int, digits: int, value: str) -> None:
        key = (kind, int(s))
        if key in self._entries and self._entries[key][0] >= digits:
            return
        self._entries[key] = (int(digits), value)
        self._dirty = True

    def store(self) -> None:
        if not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = [f"{k} {s} {d} {v}" for (k, s), (d, v) in sorted(self._entries.items())]
        self.path.write_text("\n".join(lines) + ("\n" if lines else ""))
        self._dirty = False


# --- serialization ----------------------------------------------------------------------

def _entry_dict(entry: reg.ReportEntry) -> dict:
    d = entry.to_dict()
    d["elapsed_seconds"] = f"{entry.elapsed_seconds:.6f}"
    return d


def report_to_dict(report: reg.VerificationReport) -> dict:
    return {
        "version": report.version,
        "timestamp": report.timestamp,
        "digits": report.digits,
        "guard": report.guard,
        "settings": report.settings,
        "entries": [_entry_dict(e) for e in report.entries],
        "summary": report.summary,
    }


def report_from_dict(d: dict) -> reg.VerificationReport:
    entries = []
    for raw in d["entries"]:
        raw = dict(raw)
        raw["elapsed_seconds"] = float(raw.get("elapsed_seconds", 0))
        entries.append(reg.ReportEntry.from_dict(raw))
    return reg.VerificationReport(
        entries=entries,
        digits=d["digits"],
        guard=d.get("guard", 0),
        timestamp=d.get("timestamp", ""),
        version=d.get("version", reg.SCHEMA_VERSION),
        settings=d.get("settings", {}),
    )


def _params_text(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def render(report: reg.VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for e in report.entries:
            row = _entry_dict(e)
            row["params"] = _params_text(e.params)
            writer.writerow(row)
        return buf.getvalue()
    if fmt == "markdown":
        s = report.summary
        out = [
            f"# Verification report (digits={report.digits})",
            "",
            f"PASS {s['PASS']} / FAIL {s['FAIL']} / INCONCLUSIVE {s['INCONCLUSIVE']} / total {s['total']}",
            "",
            "| id | params | lhs | rhs | rel_err | status |",
            "|---|---|---|---|---|---|",
        ]
        for e in report.entries:
            out.append(f"| {e.id} | {_params_text(e.params)} | {e.lhs} | {e.rhs} | {e.rel_err} | {e.status} |")
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_report(report: reg.VerificationReport, fmt: str, path: str | os.PathLike) -> None:
    Path(path).write_text(render(report, fmt))


def read_report(path: str | os.PathLike) -> reg.VerificationReport:
    return report_from_dict(json.loads(Path(path).read_text()))


# --- argument parsing -------------------------------------------------------------------

def parse_int_range(text: str) -> tuple[int, ...]:
    """``'3'``, ``'0..4'`` (inclusive) or comma-separated mixes such as ``'1,3..5'``."""
    values: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}; use a, a..b or a,b,c") from None
    return tuple(values)


def parse_real_list(text: str) -> tuple[str, ...]:
    out = []
    for part in text.split(","):
        try:
            out.append(reg.parse_real(part)[0])
        except AperyError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return tuple(out)


@dataclass
class RunConfig:
    command: str
    pattern: str = "*"
    ranges: dict = field(default_factory=dict)
    digits: int = 20
    guard: int = 10
    horizon: int = ne.DEFAULT_HORIZON
    ladder_depth: int = ne.DEFAULT_LADDER_DEPTH
    series_digits: int = ne.DEFAULT_TARGET_DIGITS
    workers: int = 1
    out: str | None = None
    format: str = "markdown"
    allow_inconclusive: bool = False
    use_cache: bool = True
    series: str | None = None
    integral: str | None = None
    constant: str | None = None
    s: int | None = None
    j: int | None = None
    k: int | None = None

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.digits, self.guard)

    @property
    def settings(self) -> reg.NumericSettings:
        return reg.NumericSettings(self.horizon, self.ladder_depth, self.series_digits)

    @property
    def selector(self) -> reg.Selector:
        return reg.Selector(self.pattern, dict(self.ranges))


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apery", description="Check Apery-like series identities at high precision.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_positive, default=20, help="significant digits (default 20)")
    common.add_argument("--guard", type=int, default=10, help="extra working digits (default 10)")
    common.add_argument("--horizon", type=_positive, default=ne.DEFAULT_HORIZON, help="series partial-sum horizon")
    common.add_argument("--ladder-depth", type=_positive, default=ne.DEFAULT_LADDER_DEPTH, help="Richardson levels")
    common.add_argument("--series-digits", type=_positive, default=ne.DEFAULT_TARGET_DIGITS,
                        help="accuracy an extrapolated series must certify")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the constant cache")

    sub.add_parser("list", help="list identity families and their domains")

    ev = sub.add_parser("eval", parents=[common], help="evaluate one series, integral or constant")
    what = ev.add_mutually_exclusive_group(required=True)
    what.add_argument("--series", help="series family (zeta_family, t_family, nested_S_family, nested_T_family or T3.x)")
    what.add_argument("--integral", help="integral side of T3.1, T3.4, T3.6 or T3.8 (or a family name)")
    what.add_argument("--constant", choices=sf.DIRICHLET_KINDS, help="Dirichlet constant")
    ev.add_argument("--j", type=int, default=None)
    ev.add_argument("--k", type=int, default=None)
    ev.add_argument("--s", type=int, default=None)

    ver = sub.add_parser("verify", parents=[common], help="verify identity instances and write a report")
    ver.add_argument("--family", help="identity id glob(s), comma separated, e.g. 'T3.1' or 'L2.*'")
    ver.add_argument("--suite", choices=sorted(SUITES), help="predefined selection")
    for name in ("j", "k", "m", "n", "N"):
        ver.add_argument(f"--{name}", type=parse_int_range, default=None, metavar="RANGE")
    ver.add_argument("--x", type=parse_real_list, default=None, help="comma-separated x samples, e.g. pi/6,pi/4")
    ver.add_argument("--t", type=parse_real_list, default=None, help="comma-separated t samples, e.g. 1/4,1/2")
    ver.add_argument("--workers", type=_positive, default=1)
    ver.add_argument("--out", help="report path; format inferred from the extension unless --format is given")
    ver.add_argument("--format", choices=FORMATS)
    ver.add_argument("--allow-inconclusive", action="store_true")
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    """Parse ``argv`` into a :class:`RunConfig`; usage errors exit with status 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(command=ns.command)
    if ns.command == "list":
        return cfg
    cfg.digits, cfg.guard = ns.digits, ns.guard
    cfg.horizon, cfg.ladder_depth, cfg.series_digits = ns.horizon, ns.ladder_depth, ns.series_digits
    cfg.use_cache = not ns.no_cache
    if ns.command == "eval":
        cfg.series, cfg.integral, cfg.constant = ns.series, ns.integral, ns.constant
        cfg.j, cfg.k, cfg.s = ns.j, ns.k, ns.s
        if cfg.constant and cfg.s is None:
            parser.error("--constant needs --s")
        if (cfg.series or cfg.integral) and (cfg.j is None or cfg.k is None):
            parser.error("--series/--integral need --j and --k")
        return cfg
    if ns.family and ns.suite:
        parser.error("--family and --suite are mutually exclusive")
    cfg.pattern = ns.family or SUITES[ns.suite or "all"]
    for name in ("j", "k", "m", "n", "N", "x", "t"):
        value = getattr(ns, name)
        if value is not None:
            cfg.ranges[name] = value
    cfg.workers = ns.workers
    cfg.allow_inconclusive = ns.allow_inconclusive
    cfg.out = ns.out
    fmt = ns.format
    if ns.out:
        inferred = _EXT_FORMAT.get(Path(ns.out).suffix.lower())
        if fmt and inferred and fmt != inferred:
            parser.error(f"--format {fmt} conflicts with output file extension {Path(ns.out).suffix}")
        fmt = fmt or inferred or "json"
    cfg.format = fmt or "markdown"
    return cfg


# --- commands -------------------------------------------------------------------------------

def _cmd_list(out) -> int:
    for fam in reg.catalog():
        print(f"{fam.id}  [{fam.mode}]  {fam.description}", file=out)
        for pid, domain in fam.parts.items():
            print(f"    {pid}: " + ", ".join(str(b) for b in domain), file=out)
    return 0


def _cmd_eval(cfg: RunConfig, out) -> int:
    ctx = cfg.ctx
    if cfg.constant:
        value = sf.dirichlet(cfg.constant, cfg.s, ctx)
    elif cfg.series:
        spec = ne.SeriesSpec(cfg.series, cfg.j, cfg.k)
        value = ne.series_accelerated(spec, ctx, cfg.horizon, cfg.ladder_depth, cfg.series_digits).value
    else:
        value = ne.rhs_integral(cfg.integral, cfg.j, cfg.k, ctx).value
    print(mpmath.nstr(value, cfg.digits), file=out)
    return 0


def _cmd_verify(cfg: RunConfig, out) -> int:
    report = reg.run_suite(cfg.selector, cfg.ctx, cfg.settings, workers=cfg.workers)
    if cfg.out:
        write_report(report, cfg.format, cfg.out)
    else:
        out.write(render(report, cfg.format))
    s = report.summary
    print(f"PASS {s['PASS']}  FAIL {s['FAIL']}  INCONCLUSIVE {s['INCONCLUSIVE']}  total {s['total']}", file=sys.stderr)
    if s["FAIL"]:
        return 1
    if s["INCONCLUSIVE"]:
        if cfg.allow_inconclusive:
            log.warning("%d inconclusive entries", s["INCONCLUSIVE"])
            return 0
        return 1
    return 0


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    cfg = parse_args(argv)
    if cfg.command == "list":
        return _cmd_list(out)
    cache = ConstantCache().load() if cfg.use_cache else None
    sf.set_constant_store(cache)
    try:
        if cfg.command == "eval":
            return _cmd_eval(cfg, out)
        return _cmd_verify(cfg, out)
    except AperyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        sf.set_constant_store(None)
        if cache is not None:
            try:
                cache.store()
            except OSError as exc:
                log.warning("could not write constant cache: %s", exc)


if __name__ == "__main__":
    sys.exit(main())
