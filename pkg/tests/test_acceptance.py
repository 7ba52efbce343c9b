"""Acceptance criteria A1-A15 at their pinned tolerances.

Each criterion prints one ``A<k> PASS|FAIL`` line; run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import sys

import pytest

from lempertkit.suite import CRITERIA, run_criterion, run_suite


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key, capsys):
    result = run_criterion(key, seed=42)
    with capsys.disabled():
        print(f"\n{result.line()}")
        for report in result.reports:
            if not report.passed:
                print(f"      {report.summary()}")
    assert result.error is None, result.error
    assert result.passed, [r.summary() for r in result.reports if not r.passed]


def test_seed_independence(capsys):
    results = run_suite(seed=7)
    with capsys.disabled():
        print("\nseed 7: " + " ".join(f"{r.key}:{'PASS' if r.passed else 'FAIL'}" for r in results))
    assert all(r.passed for r in results)


if __name__ == "__main__":
    outcome = run_suite(seed=int(sys.argv[1]) if len(sys.argv) > 1 else 42)
    for r in outcome:
        print(r.line())
    sys.exit(0 if all(r.passed for r in outcome) else 1)
