import os
import re

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or report.when != "call" and not report.failed:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if m:
        num = int(m.group(1))
        prev = _ACCEPTANCE.get(num, (m.group(2), "PASS"))
        status = "FAIL" if report.failed or prev[1] == "FAIL" else "PASS"
        _ACCEPTANCE[num] = (m.group(2), status)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        name, status = _ACCEPTANCE[num]
        if num == 12 and status == "PASS":
            status = "PASS (soft report, trend not asserted)"
        terminalreporter.write_line(f"criterion {num:2d} {name.replace('_', ' ')}: {status}")


@pytest.fixture(scope="session")
def eq11():
    from kempeflip.chains import preset
    return preset("vigoda_eq11")


@pytest.fixture(scope="session")
def obs51():
    from kempeflip.chains import preset
    return preset("dpp_obs51")


@pytest.fixture(scope="session")
def eq12():
    from kempeflip.chains import preset
    return preset("cm_eq12")
