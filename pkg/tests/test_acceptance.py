"""Acceptance suite: the twelve audit checks at full ("medium") scale.

Each check prints one PASS/FAIL line with its runtime and time limit.
Run directly with ``python tests/test_acceptance.py`` for the table alone.
"""

import sys

import pytest

from cliquesys.audit import CHECKS, run_check


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"{c[0]:02d}-{c[1]}" for c in CHECKS])
def test_acceptance(number, capsys):
    result = run_check(number, "medium")
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    results = [run_check(num, "medium") for num, *_ in CHECKS]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
