import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        name = m.group(2).replace("_", " ")
        _results[m.group(1)] = (name, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results, key=int):
        name, status = _results[num]
        terminalreporter.write_line(f"criterion {int(num):2d}  {status}  {name}")
