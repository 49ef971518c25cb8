import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _criteria[name] = ("PASS" if report.passed else "FAIL", getattr(report, "duration", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        verdict, secs = _criteria[name]
        number = name.split("_")[2]
        title = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {int(number):2d}: {verdict}  ({secs:.2f}s)  {title}")
