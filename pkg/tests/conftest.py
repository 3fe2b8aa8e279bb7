import os
import sys

import hypothesis
import pytest

sys.path.insert(0, os.path.dirname(__file__))

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from ginv.liealg import build_standard  # noqa: E402


@pytest.fixture(scope="session")
def sl2():
    return build_standard("sl2")


@pytest.fixture(scope="session")
def so3():
    return build_standard("so3")


@pytest.fixture(scope="session")
def so4():
    return build_standard("so4")


@pytest.fixture(scope="session")
def heis():
    return build_standard("heisenberg3")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
