"""Acceptance gate: the eleven headline checks at their full sizes.

Each test runs one named verification suite at level="full" and prints a
single PASS/FAIL line; all checks are exact (integer and rational
arithmetic only, no tolerances).  Run with -s to watch the lines appear,
or rely on the per-test verdicts; `python -m treelie verify all
--level full` reproduces the same run from the command line.
"""

import pytest

from treelie.verify import ACCEPTANCE_SUITES, run_suite

CRITERIA = [(k, name, desc) for k, (name, desc) in enumerate(ACCEPTANCE_SUITES, 1)]


@pytest.mark.parametrize(
    "number,suite,description",
    CRITERIA,
    ids=[f"{k:02d}-{name}" for k, name, _ in CRITERIA],
)
def test_acceptance(number, suite, description):
    report = run_suite(suite, level="full")
    verdict = "PASS" if report.passed else "FAIL"
    print(f"ACCEPTANCE {number} ({suite}): {verdict}")
    if not report.passed:
        bad = [c for c in report.checks if not c.passed]
        detail = "; ".join(f"{c.name}: {c.detail}" for c in bad)
        pytest.fail(f"criterion {number}, {description}: {detail}")
