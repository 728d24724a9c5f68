"""Acceptance gate: runs each verification criterion at its stated
tolerance (exact comparisons throughout; the fixture criteria also carry
wall-clock limits) and prints one pass/fail line per criterion."""
import pytest

from orthoposet import verify


@pytest.mark.parametrize("number,name", [(num, name) for num, name, _, _ in verify.CRITERIA])
def test_criterion(number, name, capsys):
    result = verify.run_criterion(number)
    with capsys.disabled():
        status = "PASS" if result.passed else "FAIL"
        print(f"criterion {number:2d} [{status}] {name} ({result.seconds:.2f}s): {result.detail}")
    assert result.passed, f"criterion {number} ({name}): {result.detail}"
