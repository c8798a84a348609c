import pytest

from pufgate import _backend, _fallback

BACKENDS = ["python"] + (["compiled"] if _backend.compiled_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per kernel implementation."""
    if request.param == "compiled":
        from pufgate import _kernels as impl
    else:
        impl = _fallback
    monkeypatch.setattr(_backend, "sha256_compress", impl.sha256_compress)
    monkeypatch.setattr(_backend, "bch_locate_errors", impl.bch_locate_errors)
    return request.param


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")
    config._acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    item.config._acceptance_lines.append(
        f"[{status}] criterion {number}: {title} ({report.duration:.2f}s)"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
