import random

import pytest

from diamondlab import golay
from diamondlab.geometry import classify
from diamondlab.perm import diamond_generators, generate_closure, orbit
from diamondlab.tiles import make_diamond_figure


@pytest.fixture(scope="session")
def diamond():
    return make_diamond_figure()


@pytest.fixture(scope="session")
def gens():
    return diamond_generators()


@pytest.fixture(scope="session")
def group(gens):
    return generate_closure(gens)


@pytest.fixture(scope="session")
def diamond_orbit(diamond, gens):
    return sorted(orbit(diamond, gens))


@pytest.fixture(scope="session")
def classes(diamond_orbit):
    return classify(diamond_orbit)


@pytest.fixture(scope="session")
def code():
    return golay.build_golay()


@pytest.fixture(scope="session")
def octads(code):
    return golay.enumerate_octads(code)


@pytest.fixture(scope="session")
def m24(octads):
    return golay.m24_group(octads=octads)


@pytest.fixture(scope="session")
def brick_stabilizer(m24):
    return golay.octad_stabilizer(m24)


@pytest.fixture
def rng():
    return random.Random(20131)
