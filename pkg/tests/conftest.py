import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line PASS/FAIL summary for an acceptance criterion."""
    state = {}

    def record(number: int, text: str):
        state["number"], state["text"] = number, text

    yield record
    if "number" in state:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        line = f"criterion {state['number']:>2}: {'PASS' if ok else 'FAIL'}  {state['text']}"
        _LINES[state["number"]] = line
        print("\n" + line)


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_LINES):
            terminalreporter.write_line(_LINES[k])
