#!/usr/bin/env python3
"""Tour of the transform layer: Plancherel, eigenfunctions, translation,
convolution.  Everything prints a measured error next to the closed form it
is checked against."""

import math
import time

import numpy as np

from dunklwave.grids import SampledFunction, lp_norm, make_grid
from dunklwave.kernels import dunkl_kernel, plancherel_constant
from dunklwave.transforms import (
    TransformPlan,
    dunkl_convolve,
    dunkl_transform,
    dunkl_translate,
    inverse_dunkl_transform,
)


def gauss(x):
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2)


def d_gauss(x):
    x = np.asarray(x, dtype=float)
    return -x * np.exp(-0.5 * x * x)


if __name__ == "__main__":
    t0 = time.time()
    grid = make_grid(12.0, 24, 12)
    print(f"grid: radius {grid.radius}, {grid.nodes.size} nodes")

    for gamma in (0.0, 0.5, 1.2):
        plan = TransformPlan(grid, grid, gamma)
        f = SampledFunction.from_callable(gauss, grid, d_gauss)
        fhat = dunkl_transform(f, plan)

        # the transform of the unit gaussian is again a gaussian
        want = 2.0 ** (gamma + 1.0) * math.gamma(gamma + 1.0) * gauss(grid.nodes)
        band = np.abs(grid.nodes) <= 4.0
        err = np.max(np.abs(fhat.values[band] - want[band]) / want[band])
        print(f"gamma={gamma}: gaussian transform vs closed form  {err:.2e}")

        # norm preservation with the plancherel constant in front
        m = plancherel_constant(gamma)
        lhs = lp_norm(f, 2, gamma)
        rhs = math.sqrt(m) * lp_norm(fhat, 2, gamma)
        print(f"gamma={gamma}: plancherel norm ratio off by       "
              f"{abs(lhs - rhs) / lhs:.2e}")

        back = inverse_dunkl_transform(fhat, plan)
        print(f"gamma={gamma}: round trip                         "
              f"{np.max(np.abs(back.values - f.values)):.2e}")

    # translation realizes the kernel product formula
    gamma, lam = 0.5, 1.3
    xs = np.linspace(-2.0, 2.0, 5)
    ys = np.linspace(-3.0, 3.0, 5)
    worst = 0.0
    for x in xs:
        shifted = dunkl_translate(lambda y: dunkl_kernel(gamma, lam, y), x, gamma)
        got = np.asarray(shifted(ys))
        want = dunkl_kernel(gamma, lam, x) * dunkl_kernel(gamma, lam, ys)
        worst = max(worst, float(np.max(np.abs(got - want))))
    print(f"product formula over a 5x5 sample: {worst:.2e}")

    # gaussian convolved with itself, order gamma
    gamma = 0.5
    f = SampledFunction.from_callable(gauss, grid, d_gauss)
    conv = dunkl_convolve(f, gauss, gamma)
    want = math.gamma(gamma + 1.0) * np.exp(-grid.nodes ** 2 / 4.0)
    print(f"gaussian self-convolution vs closed form: "
          f"{np.max(np.abs(conv.values - want)):.2e}")

    print(f"done in {time.time() - t0:.1f} s")
