import numpy as np
import pytest

from dunklwave.grids import SampledFunction, make_grid
from dunklwave.kernels import Order, SoninePair
from dunklwave.transforms import TransformPlan


@pytest.fixture(scope="session")
def grid12():
    return make_grid(12.0, 24, 12)


@pytest.fixture(scope="session")
def plan_half(grid12):
    return TransformPlan(grid12, grid12, 0.5)


@pytest.fixture(scope="session")
def pair():
    return SoninePair(Order(0.5), Order(1.5))


@pytest.fixture(scope="session")
def gauss12(grid12):
    return SampledFunction.from_callable(
        lambda x: np.exp(-0.5 * np.asarray(x, dtype=float) ** 2),
        grid12,
        lambda x: -np.asarray(x, dtype=float) * np.exp(-0.5 * np.asarray(x, dtype=float) ** 2),
    )
