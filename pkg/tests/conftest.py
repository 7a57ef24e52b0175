import functools
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from reflsub.rootdata import build_root_datum  # noqa: E402
from reflsub.subsystems import enumerate_atlas  # noqa: E402
from reflsub.tables import load_reference_tables  # noqa: E402

settings.register_profile("seeded", derandomize=True, deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("seeded")

DATA = os.path.join(os.path.dirname(__file__), "data")
ALL_GROUPS = tuple(range(23, 38))
SMALL_GROUPS = (23, 24, 25, 26, 27, 32, 33, 35)
MEDIUM_GROUPS = (28, 29, 30, 31)
LARGE_GROUPS = (34, 36, 37)


@functools.lru_cache(maxsize=None)
def atlas(group):
    return enumerate_atlas(group)


@functools.lru_cache(maxsize=None)
def datum(group):
    return build_root_datum(group)


@functools.lru_cache(maxsize=None)
def reference_tables():
    return load_reference_tables(os.path.join(DATA, "reference_tables.txt"))


ACCEPTANCE = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    import random
    return random.Random(12345)
