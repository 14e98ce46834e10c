from fractions import Fraction as F

import mpmath
import pytest

from apery import identity_registry as reg
from apery.errors import DomainError
from apery.precision import PrecisionContext

CTX = PrecisionContext(20)


def test_catalog_ids():
    ids = reg.identity_ids()
    for pid in ("L2.1.i", "L2.1.iv", "L2.2.iii", "L2.3.i", "L2.3.ii", "GF3.6", "GF3.10",
                "T3.1", "T3.4", "T3.6", "T3.8", "C3.2", "P3.3", "P3.5", "C3.7"):
        assert pid in ids
    assert len(reg.catalog()) == 13
    assert len(ids) == len(set(ids))


def test_parse_real():
    assert reg._as_float("pi/6") == pytest.approx(mpmath.pi / 6)
    assert reg._as_float("2*pi/5") == pytest.approx(2 * mpmath.pi / 5)
    assert reg._as_float("1/4") == 0.25
    assert reg._as_float("0.75") == 0.75
    with pytest.raises(Exception):
        reg.parse_real("banana")


@pytest.mark.parametrize(
    "pid,params",
    [
        ("L2.1.ii", {"m": 0, "n": 1}),
        ("L2.1.i", {"m": 0, "n": 0}),
        ("L2.2.iii", {"m": 0, "n": 2}),
        ("T3.8", {"j": 0, "k": 1}),
        ("T3.1", {"j": 0, "k": 0}),
        ("L2.3.i", {"k": 2, "x": "pi/2", "N": 10}),
        ("GF3.6", {"j": 0, "t": "1"}),
        ("GF3.10", {"j": 0, "t": "1/2"}),
        ("L2.1.i", {"m": 1}),
        ("L2.1.i", {"m": 1.5, "n": 2}),
    ],
)
def test_validate_rejects(pid, params):
    with pytest.raises(DomainError):
        reg.validate(pid, params)


def test_unknown_id():
    with pytest.raises(DomainError):
        reg.domain_of("X9.9")
    with pytest.raises(DomainError):
        reg.IdentityInstance("X9.9", {})


def test_domain_error_message_names_bound():
    with pytest.raises(DomainError, match="m >= 1"):
        reg.validate("L2.1.ii", {"m": 0, "n": 1})


def test_exact_check():
    e = reg.check(reg.IdentityInstance("L2.1.i", {"m": 1, "n": 1}), CTX)
    assert e.status == reg.PASS
    assert e.lhs == "pi^3/24 - pi/4"
    assert e.abs_err == "0"
    assert e.tolerance == "exact"


def test_closed_forms():
    with mpmath.workdps(40):
        assert abs(reg.closed_form("C3.2", 0, CTX) - 2 * mpmath.log(2)) < 1e-25
        assert abs(reg.closed_form("P3.3", 0, CTX) - (mpmath.pi**2 / 6 - 2 * mpmath.log(2) ** 2)) < 1e-25
        assert abs(reg.closed_form("P3.5", 0, CTX) - mpmath.pi**2 / 2) < 1e-25
        assert abs(reg.closed_form("P3.5", 1, CTX) - (mpmath.pi**4 / 8 - 8 * mpmath.catalan**2)) < 1e-25
        assert abs(reg.closed_form("C3.7", 1, CTX) - 7 * mpmath.zeta(3) / 2) < 1e-25
    with pytest.raises(DomainError):
        reg.closed_form("T3.1", 0, CTX)


def test_numeric_check_pass():
    e = reg.check(reg.IdentityInstance("C3.2", {"j": 0}), CTX)
    assert e.status == reg.PASS
    assert e.lhs.startswith("1.386294361")
    assert float(e.rel_err) <= 1e-8


def test_inconclusive_on_ladder_failure():
    settings = reg.NumericSettings(horizon=64, ladder_depth=2, series_digits=15)
    e = reg.check(reg.IdentityInstance("T3.1", {"j": 0, "k": 1}), CTX, settings)
    assert e.status == reg.INCONCLUSIVE
    assert e.message


def test_fail_is_reported(monkeypatch):
    # corrupt the kernel so the comparison is genuinely wrong
    original = reg.ne.gf_kernel
    monkeypatch.setattr(reg.ne, "gf_kernel", lambda *a: original(*a) * (1 + mpmath.mpf(10) ** -6))
    e = reg.check(reg.IdentityInstance("GF3.6", {"j": 0, "t": "1/2"}), CTX)
    assert e.status == reg.FAIL


def test_expand_sorted_and_filtered():
    sel = reg.Selector("L2.1.*", ranges={"m": (0, 1), "n": (0, 1)})
    inst = reg.expand(sel)
    ids = [(i.id, i.params["m"], i.params["n"]) for i in inst]
    # L2.1.ii and iv need m >= 1; L2.1.i and ii need n >= 1
    assert ids == [
        ("L2.1.i", 0, 1), ("L2.1.i", 1, 1),
        ("L2.1.ii", 1, 1),
        ("L2.1.iii", 0, 0), ("L2.1.iii", 0, 1), ("L2.1.iii", 1, 0), ("L2.1.iii", 1, 1),
        ("L2.1.iv", 1, 0), ("L2.1.iv", 1, 1),
    ]


def test_expand_limits_and_multi_pattern():
    inst = reg.expand(reg.Selector("C3.2,P3.5", limits={"j": 1}))
    assert [(i.id, i.params["j"]) for i in inst] == [("C3.2", 0), ("C3.2", 1), ("P3.5", 0), ("P3.5", 1)]


def test_empty_selection():
    with pytest.raises(reg.UsageError):
        reg.run_suite(reg.Selector("L2.1.ii", ranges={"m": (0,)}), CTX)


def test_run_suite_workers_same_order():
    sel = reg.Selector("L2.2.*", limits={"m": 2, "n": 3})
    a = reg.run_suite(sel, CTX)
    b = reg.run_suite(sel, CTX, workers=2)
    strip = lambda r: [{**e.to_dict(), "elapsed_seconds": 0} for e in r.entries]
    assert strip(a) == strip(b)
    assert a.summary[reg.PASS] == a.summary["total"] > 0


def test_report_entry_roundtrip():
    e = reg.check(reg.IdentityInstance("L2.2.i", {"m": 0, "n": 2}), CTX)
    assert reg.ReportEntry.from_dict(e.to_dict()) == e
