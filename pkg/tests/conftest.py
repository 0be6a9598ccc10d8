from __future__ import annotations

import pytest

# criterion number -> list of (test name, outcome, elapsed seconds or None)
_ACCEPTANCE: dict[int, list[tuple[str, str, float | None]]] = {}
_LABELS: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, label = marker.args
        _LABELS[number] = label
        elapsed = dict(item.user_properties).get("elapsed_s")
        _ACCEPTANCE.setdefault(number, []).append((item.name, report.outcome, elapsed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        results = _ACCEPTANCE[number]
        ok = all(outcome == "passed" for _, outcome, _ in results)
        timing = [t for _, _, t in results if t is not None]
        line = f"criterion {number} {_LABELS[number]}: {'PASS' if ok else 'FAIL'}"
        if timing:
            line += f" ({sum(timing):.3f} s)"
        failed = [name for name, outcome, _ in results if outcome != "passed"]
        if failed:
            line += f" [failed: {', '.join(failed)}]"
        terminalreporter.write_line(line)
