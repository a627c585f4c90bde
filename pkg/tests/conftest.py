import pytest

_ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--run-nightly", action="store_true", default=False, help="run nightly-tier tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-nightly"):
        return
    skip = pytest.mark.skip(reason="nightly tier; pass --run-nightly")
    for item in items:
        if "nightly" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, ok, detail=""):
        _ACCEPTANCE.setdefault(number, []).append((bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[number]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts if d)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
