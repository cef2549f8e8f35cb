import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gouyprop.classical import solve_fundamental  # noqa: E402
from gouyprop.scenarios import reference_medium  # noqa: E402

K0 = 2 * math.pi / 653.0


@pytest.fixture(scope="session")
def medium():
    return reference_medium()


@pytest.fixture(scope="session")
def reference_solution(medium):
    return solve_fundamental(medium, rel_tol=1e-10, grid_points=2001)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
