import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symconvex import make_disk, make_ellipse, random_symmetric_body  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def disk():
    return make_disk(1.0)


@pytest.fixture
def ellipse():
    return make_ellipse(2.0, 1.0)


@pytest.fixture(params=[3, 11, 42])
def random_body(request):
    return random_symmetric_body(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
