import math

import numpy as np
import pytest

from resonance_sizer import validate_configuration


def random_rotation(rng):
    """Haar-ish proper rotation of R^3 via QR with sign fix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def apply_rigid_motion(config, rng):
    rot = random_rotation(rng)
    shift = rng.normal(size=3)
    return validate_configuration(config.centers @ rot.T + shift)


@pytest.fixture
def unit_pair():
    """Two centers at distance 1."""
    return validate_configuration([(0, 0, 0), (1, 0, 0)])


@pytest.fixture
def collinear():
    """Equally spaced collinear triple 0, 1, 2."""
    return validate_configuration([(0, 0, 0), (1, 0, 0), (2, 0, 0)])


@pytest.fixture
def equilateral():
    """Unit-side equilateral triangle in the plane."""
    return validate_configuration(
        [(0, 0, 0), (1, 0, 0), (0.5, math.sqrt(3) / 2, 0)]
    )
