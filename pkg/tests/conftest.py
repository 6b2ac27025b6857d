import os
from pathlib import Path

import pytest

# Keep the (expensive, first-run) table build out of temp dirs so repeated
# test runs reuse one cache.  The env var is also how deployments relocate it.
_CACHE = Path(__file__).resolve().parent.parent / ".cache" / "tables.bin"
os.environ.setdefault("RIG_TABLE_CACHE", str(_CACHE))


@pytest.fixture(scope="session")
def tables():
    from cuberig.tables import get_tables

    return get_tables()
