from __future__ import annotations

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--extended",
        action="store_true",
        default=False,
        help="run long checks (|Aut| 1440 table rows, Cayley graphs of order 2560)",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one summary line per acceptance criterion."""

    def record(number, title, ok, seconds, budget=None, detail=""):
        status = "PASS" if ok else "FAIL"
        if budget is not None and seconds > budget:
            status = "FAIL"
            detail = (detail + "; " if detail else "") + f"over the {budget:g} s budget"
        line = f"[{status}] criterion {number:>2}: {title} ({seconds:.1f} s)" + (f" - {detail}" if detail else "")
        _ACCEPTANCE.append(line)
        print(line)
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
