import numpy as np
import pytest
from hypothesis import strategies as st

from torus_thurston.halfplane import HalfPlanePoint

coords_re = st.floats(-10.0, 10.0, allow_nan=False)
coords_im = st.floats(1e-2, 10.0, allow_nan=False)
points = st.builds(HalfPlanePoint, coords_re, coords_im)
params = st.floats(0.0, 1.0)


def random_points(rng, n):
    """n points with re in [-10, 10], im in [1e-2, 10]."""
    return [HalfPlanePoint(float(x), float(y)) for x, y in zip(rng.uniform(-10, 10, n), rng.uniform(1e-2, 10, n))]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
