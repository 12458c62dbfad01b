import pytest

from orbitpn import models


@pytest.fixture(scope="session")
def swap_net():
    return models.load("swap_infinite")


@pytest.fixture(scope="session")
def classes_net():
    return models.load("orbit_classes")


@pytest.fixture(scope="session")
def satsat_net():
    return models.load("satellite_swap")


@pytest.fixture(scope="session")
def debris_net():
    return models.load("debris_disposal")


@pytest.fixture(scope="session")
def all_nets(swap_net, classes_net, satsat_net, debris_net):
    return (swap_net, classes_net, satsat_net, debris_net)


# environments under which the two guarded maneuvers run their documented scenarios
SATSAT_ENVS = (
    {"collision_prob": 0.5, "clock": 5.0, "T1": 5.0, "eps": 1.0},
    {"collision_prob": 0.5, "clock": 6.0, "T1": 5.0, "eps": 1.0},
)
DEBRIS_ENV = {"collision_prob": 0.5}


@pytest.fixture(scope="session")
def satsat_envs():
    return SATSAT_ENVS


@pytest.fixture(scope="session")
def debris_env():
    return dict(DEBRIS_ENV)
