import numpy as np
import pytest

from monalg import load_fixture, list_fixtures, xi_values


@pytest.fixture(scope="session")
def bundles():
    return {name: load_fixture(name) for name in list_fixtures()}


def random_safe_points(frame, rng, count, margin=0.3):
    """Points in [-2, 2]^3 keeping every |xi_u| above margin."""
    pts = []
    while len(pts) < count:
        p = rng.uniform(-2.0, 2.0, size=3)
        if np.min(np.abs(xi_values(frame, p))) > margin:
            pts.append(p)
    return np.array(pts)
