import pytest

from synth import write_pipeline_fixture


@pytest.fixture
def pipeline_dir(tmp_path):
    """Fresh demo inputs plus config; yields the config path."""
    return write_pipeline_fixture(tmp_path / "fixture")


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    key = (mark.args[0], mark.args[1])
    if _CRITERIA.get(key) == "FAIL":
        return
    if rep.failed:
        _CRITERIA[key] = "FAIL"
    elif rep.skipped:
        _CRITERIA[key] = "SKIP"
    elif rep.when == "call":
        _CRITERIA[key] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), status in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {title}")
