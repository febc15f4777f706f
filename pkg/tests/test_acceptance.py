"""
Acceptance suite: every criterion at full size and its stated tolerance.

Each test prints one PASS/FAIL line for its criterion, bypassing output
capture. The same checks back ``qwrca verify``.
"""

import pytest

from qwrca.state_classes import spawn_seeds
from qwrca.verification import CHECKS

SEED = 42
_SEEDS = spawn_seeds(SEED, len(CHECKS))


@pytest.mark.slow
@pytest.mark.parametrize(
    "index", range(len(CHECKS)), ids=[c.__name__.removeprefix("check_") for c in CHECKS]
)
def test_criterion(index, capsys):
    result = CHECKS[index](_SEEDS[index], False)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
    assert result.measured < result.tolerance or result.tolerance == 0
