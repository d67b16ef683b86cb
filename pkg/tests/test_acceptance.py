"""One test per acceptance criterion, each at its stated tolerance.

Every test records a ``PASS``/``FAIL`` line that is printed in the pytest
summary.  Run as a script for the lines alone:

    python tests/test_acceptance.py
"""

import sys

import pytest

from dunklwedge.checks import SUITE_NAMES, run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

CRITERIA = dict(enumerate(SUITE_NAMES, start=1))


def evaluate(number: int):
    suite = CRITERIA[number]
    rows = run_suite(suite)
    failed = [r for r in rows if not r.passed]
    status = "PASS" if not failed else "FAIL"
    detail = "; ".join(f"{r.name}={r.value:.3g}" for r in failed) if failed else f"{len(rows)} checks"
    line = f"{status} criterion {number} ({suite}): {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    for r in rows:
        print("   ", r.line())
    return rows, failed


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    rows, failed = evaluate(number)
    assert rows
    assert not failed, "\n".join(r.line() for r in failed)


if __name__ == "__main__":
    bad = 0
    for n in sorted(CRITERIA):
        bad += bool(evaluate(n)[1])
    print("\n".join(["", *ACCEPTANCE_LINES]))
    sys.exit(1 if bad else 0)
