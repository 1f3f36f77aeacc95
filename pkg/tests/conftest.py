import pytest
from hypothesis import settings

# First calls compile the numba kernels; wall-clock deadlines would flake.
settings.register_profile("medcrypt", deadline=None)
settings.load_profile("medcrypt")

_ACCEPTANCE: list[tuple[str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): headline acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL"}.get(rep.outcome, rep.outcome.upper())
        _ACCEPTANCE.append((status, marker.args[0], rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, label, seconds in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {label}  ({seconds:.1f}s)")
    passed = sum(s == "PASS" for s, _, _ in _ACCEPTANCE)
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria met")
