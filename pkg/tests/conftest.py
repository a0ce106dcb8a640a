import os

import pytest

from pretzelfloer.links import parse_grid

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def load_grid(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
        return parse_grid(fh.read())


@pytest.fixture(scope="session")
def unknot_grid():
    return load_grid("unknot2.grid")


@pytest.fixture(scope="session")
def hopf_grid():
    return load_grid("hopf4.grid")


@pytest.fixture(scope="session")
def trefoil_grid():
    return load_grid("trefoil5.grid")


@pytest.fixture(scope="session")
def fig8_grid():
    return load_grid("fig8_6.grid")


@pytest.fixture(scope="session")
def squareknot_grid():
    return load_grid("squareknot8.grid")
