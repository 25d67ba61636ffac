import pytest

# filled by test_acceptance.py: criterion id -> (passed, detail)
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def acceptance_record():
    def record(key, passed, detail):
        ACCEPTANCE_RESULTS[key] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split("/")[0]), k)):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")
