import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []
    config.addinivalue_line("markers", "acceptance: end-to-end acceptance criteria (slow, about an hour)")


@pytest.fixture(scope="session")
def report(request):
    """Collects one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_LINES]
    return lines.append


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
