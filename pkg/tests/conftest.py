import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qav import catalog  # noqa: E402
from qav.charvariety import assemble  # noqa: E402

RANDOM_SEEDS = tuple(range(20))


@lru_cache(maxsize=None)
def variety(name: str, fast: bool = False):
    if name.startswith("random"):
        return assemble(catalog.random_arrangement(int(name[6:])), fast)
    return assemble(getattr(catalog, name)(), fast)


@pytest.fixture(scope="session")
def cv():
    """``cv(name, fast=False)``: assembled variety for a catalog curve or ``random<seed>``."""
    return variety


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
