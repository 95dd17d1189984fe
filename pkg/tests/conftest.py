import math
import os
from pathlib import Path

import pytest

from pathgain.canyon import CanyonGeometry
from pathgain.surface import Dielectric, TelegraphRoughness, WallSurface

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(autouse=True, scope="session")
def _run_from_repo_root():
    previous = os.getcwd()
    os.chdir(REPO_ROOT)
    yield
    os.chdir(previous)

# Office corridor: 1.6 m wide, lightly corrugated walls (door jambs),
# transmitter at 2.2 m, receiver at 1 m.
CORRIDOR_WALL = WallSurface(
    Dielectric(1.7), TelegraphRoughness(0.035, 0.25, 0.75, 1.0, 1.0 / 3.0)
)

# Urban canyon: 8.6 m street, deep window-well corrugation.
URBAN_WALL = WallSurface(
    Dielectric(2.2), TelegraphRoughness(0.1, 0.85, 0.15, 1.0 / 0.33, 0.5)
)

# Wide avenue wall: same dielectric, shallow corrugation.
AVENUE_WALL = WallSurface(
    Dielectric(2.2), TelegraphRoughness(0.01, 0.85, 0.15, 1.0 / 0.33, 0.5)
)


@pytest.fixture
def corridor_geometry():
    return CanyonGeometry(1.6, 2.2, 1.0, CORRIDOR_WALL)


@pytest.fixture
def urban_geometry():
    return CanyonGeometry(8.6, 5.0, 1.5, URBAN_WALL)


def db(x: float) -> float:
    return 10.0 * math.log10(x)
