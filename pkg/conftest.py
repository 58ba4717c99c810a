import pytest

from application.trajectory.synthetic_trajectory import synth_reference_trajectory
from domain.entities.trajectory_point import TrajectoryPoint
from domain.entities.tuning import TuningSpec


@pytest.fixture(scope="session")
def table():
    """Nominal 80 s synthetic ascent."""
    return synth_reference_trajectory(80.0)


@pytest.fixture
def spec():
    return TuningSpec()


def make_point(**overrides) -> TrajectoryPoint:
    values = dict(
        t=0.0, m=1000.0, J=1000.0, g=9.81, T=1.0e4, l_c=5.0, l_alpha=2.0, S=1.0,
        C_N_alpha=1.0, rho=1.225, V=100.0, m_n=10.0, l_n=0.5, J_n=2.0, theta0=0.0,
    )
    values.update(overrides)
    return TrajectoryPoint(**values)


@pytest.fixture
def point():
    return make_point()
