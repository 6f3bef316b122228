import numpy as np
import pytest

from qvortex.model import ModelParams, VortexState, VortexVelocity

SIGN_CONFIGS = [
    {"eps1": -1, "eps2": 1, "gamma1": 1, "gamma2": -1},
    {"eps1": -1, "eps2": 1, "gamma1": -1, "gamma2": 1},
    {"eps1": 1, "eps2": -1, "gamma1": 1, "gamma2": -1},
    {"eps1": 1, "eps2": -1, "gamma1": -1, "gamma2": 1},
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)


@pytest.fixture
def origin():
    return VortexState(0.0, 0.0, 0.0, 0.0)


def random_params(rng, lam_max=0.45, alphas=(1.0, 10.0)):
    signs = SIGN_CONFIGS[rng.integers(len(SIGN_CONFIGS))]
    return ModelParams(
        lam=float(rng.uniform(0.0, lam_max)),
        alpha=float(alphas[rng.integers(len(alphas))]),
        **signs,
    )


def random_state(rng, scale=2.0):
    return VortexState(*rng.uniform(-scale, scale, 4))


def random_velocity(rng, scale=1.0):
    return VortexVelocity(*rng.uniform(-scale, scale, 4))
