import pytest

from vcspine import MaterialParams, RobotGeometry, default_curve, default_robot


@pytest.fixture(scope="session")
def geom():
    return RobotGeometry()


@pytest.fixture(scope="session")
def mat():
    return MaterialParams()


@pytest.fixture(scope="session")
def curve():
    return default_curve()


@pytest.fixture(scope="session")
def robot():
    return default_robot()


@pytest.fixture(scope="session")
def reach_robot():
    return default_robot(with_reach=True)
