from __future__ import annotations

import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    entry = _CRITERIA.setdefault(marker.args[0], {"ok": True, "details": []})
    if rep.failed:
        entry["ok"] = False
    for key, value in item.user_properties:
        if key == "detail" and value not in entry["details"]:
            entry["details"].append(value)
    if rep.failed and rep.when == "call":
        msg = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else str(rep.longrepr)
        entry["details"].append(f"{item.name}: {msg.splitlines()[0][:160]}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        e = _CRITERIA[k]
        detail = "; ".join(e["details"]) or "-"
        terminalreporter.write_line(f"criterion {k}: {'PASS' if e['ok'] else 'FAIL'} - {detail}")
