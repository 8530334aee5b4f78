import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import flatcert as fc


@pytest.fixture
def qq_xy():
    return fc.ring("x,y")


@pytest.fixture
def qq_xyz():
    return fc.ring("x,y,z")


@pytest.fixture
def cone_ring():
    # quadric cone with resolution chart coordinates
    return fc.ring("x,y,z,u,v", defining=("x*y - z^2",))


@pytest.fixture
def dual_numbers():
    return fc.ring("x", defining=("x^2",))
