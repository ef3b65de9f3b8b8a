import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from database import Database  # noqa: E402
from rho_numerics import compute_family, rho1_closed_form  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def rho1():
    return rho1_closed_form(dt=0.01, window=10.0)


@pytest.fixture(scope="session")
def rho_family():
    """rho_1..rho_3 on the default grid; shared because each level takes a few seconds."""
    return compute_family(3, dt=0.01, window=10.0, shift=2.0)


@pytest.fixture
async def registry(tmp_path):
    database = Database(str(tmp_path / "registry" / "results.db"))
    await database.connect()
    yield database
    await database.close()
