"""Acceptance gate: one test per criterion, each printed as a PASS/FAIL line."""

import pytest

from flagburnside import verification as V

RESULTS = []


@pytest.mark.parametrize("check", V.CRITERIA, ids=lambda fn: f"{fn.number:02d}-{fn.__name__[len('criterion_'):]}")
def test_criterion(check):
    result = check()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail
    assert result.within_budget, f"took {result.seconds:.1f}s, budget {result.budget:.0f}s"
