import pytest

from oracles import TABLE1, records_for, table1_csv

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        _criteria.append((marker.args[0], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def table1_path(tmp_path):
    path = tmp_path / "table1.csv"
    path.write_text(table1_csv(), encoding="utf-8")
    return path


@pytest.fixture
def table1_records_path(tmp_path):
    path = tmp_path / "records.csv"
    path.write_text(records_for(TABLE1), encoding="utf-8")
    return path
