import json
import pathlib
import re

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def oracle():
    """Extended-precision values frozen by tests/oracles/generate_fixtures.py."""
    return json.loads((FIXTURES / "oracle_values.json").read_text())


@pytest.fixture
def criterion():
    """Record one acceptance verdict, print it, and fail the test if it is red."""

    def record(number, checks):
        passed = all(ok for _, ok in checks)
        detail = "; ".join(f"{'ok' if ok else 'FAILED'} {text}" for text, ok in checks)
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} | {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda s: int(re.search(r"\d+", s).group())):
        terminalreporter.write_line(line)
