from __future__ import annotations

from functools import lru_cache

import pytest

from jordan_delta import zoo
from jordan_delta.exactnum import QQ, field_descriptor


@lru_cache(maxsize=None)
def _build(name: str, field: str = "Q"):
    return zoo.build(name, QQ if field == "Q" else field_descriptor(field))


@pytest.fixture(scope="session")
def build():
    return _build


CATALOG_NAMES = [e.name for e in zoo.catalog()]
SUM_NAMES = [e.name for e in zoo.semisimple_catalog()]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
