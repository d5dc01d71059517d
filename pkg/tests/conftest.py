import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"

_acceptance: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        props = dict(report.user_properties)
        name = props.get("criterion", report.nodeid.split("::")[-1])
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _acceptance.append((status, name, props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in _acceptance:
        terminalreporter.write_line(f"{status}  {name}" + (f"  [{detail}]" if detail else ""))
