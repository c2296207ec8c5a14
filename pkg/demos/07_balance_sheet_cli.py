"""Driving the batch CLI from a script: balance sheets to verdicts.

The same six subcommands are available as `acceptset <subcommand>` on the
shell; here they run in-process against the sample files in demos/data/.
"""

import io
import sys
from pathlib import Path

from acceptset.cli import main

DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    print(f"$ acceptset {' '.join(argv)}")
    sys.stdout.write(out.getvalue())
    print(f"(exit {code})\n")
    return code


print("a leveraged balance sheet: capital 10, debt 90, flat rate, two return scenarios")
run("balance-sheet", "--scenarios", str(DATA / "returns.csv"), "--config", str(DATA / "balance_sheet.cfg"))

print("direct scenario assessment against four acceptance tests")
run("assess", "--scenarios", str(DATA / "scenarios.csv"), "--config", str(DATA / "capital_tests.cfg"))

print("risk-measure values for the same book")
run("measure", "--scenarios", str(DATA / "scenarios.csv"), "--alpha", "0.99", "--beta", "0.75")

print("property falsifiers from a config (seeded, reproducible)")
run("check-properties", "--config", str(DATA / "property_checks.cfg"))

print("classification of the weak family at 3/4 on a 4-state grid")
run("classify", "--config", str(DATA / "classify.cfg"))

print("a counterexample replay")
run("counterexample", "uniform-numeraire", "--alpha", "0.6")
