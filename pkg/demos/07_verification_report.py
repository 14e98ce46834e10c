"""Running a selection of identities and writing a report, from Python and from the shell.

Shell equivalent:
    apery verify --suite closed --digits 20 --out closed.md
"""
import sys
import tempfile
from pathlib import Path

from apery import cli_report as cli
from apery import identity_registry as reg
from apery.precision import PrecisionContext

report = reg.run_suite(reg.Selector("C3.2,P3.5", limits={"j": 2}), PrecisionContext(20))
print(cli.render(report, "markdown"))
print("summary:", report.summary)

out = Path(tempfile.mkdtemp()) / "exact.json"
code = cli.main(["verify", "--suite", "exact", "--m", "0..2", "--n", "1..3", "--out", str(out)])
print(f"\nexit code {code}; report written to {out} ({out.stat().st_size} bytes)")
sys.exit(code)
