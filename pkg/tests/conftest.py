import numpy as np
import pytest

from convexlab import geometry, measure


@pytest.fixture(scope="session")
def disk1():
    return geometry.disk(1.0)


@pytest.fixture(scope="session")
def disk05():
    return geometry.disk(0.5)


@pytest.fixture(scope="session")
def ellipse21():
    return geometry.ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def blob():
    # generic non-symmetric analytic body
    return geometry.fourier_body(1.0, cos={2: 0.15}, sin={3: 0.05})


@pytest.fixture(scope="session")
def peanut():
    # origin-symmetric analytic body
    return geometry.fourier_body(1.0, cos={2: 0.1, 4: 0.02})


@pytest.fixture(scope="session")
def gaussian():
    return measure.gaussian_potential()


@pytest.fixture(scope="session")
def quad14():
    return measure.quadratic_potential([[1.0, 0.0], [0.0, 4.0]])


@pytest.fixture(scope="session")
def quartic():
    return measure.even_quartic_potential(0.1)


@pytest.fixture(scope="session")
def lebesgue():
    return measure.zero_potential()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
