import numpy as np
import pytest

from geomcross import EUCLIDEAN, HYPERBOLIC, SPHERICAL

ALL_GEOMETRIES = (SPHERICAL, EUCLIDEAN, HYPERBOLIC)
CURVED_GEOMETRIES = (SPHERICAL, HYPERBOLIC)


@pytest.fixture(params=ALL_GEOMETRIES, ids=lambda g: g.name)
def geometry(request):
    return request.param


@pytest.fixture(params=CURVED_GEOMETRIES, ids=lambda g: g.name)
def curved_geometry(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
