"""Acceptance gate: every reference criterion at its stated tolerance.

Run with ``pytest -s tests/test_acceptance.py`` to see one pass/fail line
per criterion; the same checks back the ``cavmag verify`` command.
"""

import pytest

from cavmag.verify import ALL_CHECKS


@pytest.mark.parametrize(
    "check", ALL_CHECKS, ids=[f"criterion_{i:02d}" for i in range(1, len(ALL_CHECKS) + 1)]
)
def test_acceptance_criterion(check):
    result = check()
    print(f"{'PASS' if result.passed else 'FAIL'}  {result.number:2d} "
          f"{result.name}: {result.detail}")
    assert result.passed, f"criterion {result.number} ({result.name}): {result.detail}"
