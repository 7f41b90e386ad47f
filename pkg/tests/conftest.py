import numpy as np
import pytest

from qthermo.models import BathSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20250808)


@pytest.fixture
def paper_bath():
    """The bath used by most single-qubit scans: eta=0.01, cutoff=10, T=0.4."""
    return BathSpec(eta=0.01, cutoff=10.0, temperature=0.4)


def random_hermitian(rng, dim, scale=1.0):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (m + m.conj().T)


def random_density(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)
