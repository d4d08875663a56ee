#!/usr/bin/env python3
"""Wavelet analysis and windowed synthesis.

Designs a wavelet from the spectral profile lambda^2 exp(-lambda^2/2),
computes scale-space coefficients of a gaussian, and reconstructs it over a
sequence of nested scale windows.  The reconstruction error should fall as
the window widens toward (0, inf)."""

import time

import numpy as np

from dunklwave.grids import SampledFunction, lp_norm, make_grid
from dunklwave.transforms import TransformPlan
from dunklwave.wavelets import (
    calderon_K,
    calderon_reconstruct,
    cwt,
    make_scale_grid,
    power_gaussian_generator,
    power_gaussian_profile,
    wavelet_from_profile,
)

GAMMA = 0.5


def gauss(x):
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2)


def d_gauss(x):
    x = np.asarray(x, dtype=float)
    return -x * np.exp(-0.5 * x * x)


if __name__ == "__main__":
    t0 = time.time()
    grid = make_grid(12.0, 24, 12)
    plan = TransformPlan(grid, grid, GAMMA)
    spec = wavelet_from_profile(
        power_gaussian_profile(2.0), plan, decay_exponent=2.0,
        generator_fn=power_gaussian_generator(GAMMA, 2),
    )
    print(f"admissibility constant: {spec.constant:.6f} (exact value 0.5)")

    f = SampledFunction.from_callable(gauss, grid, d_gauss)
    a_grid = make_scale_grid(0.25, 8.0, 32.0)
    field = cwt(f, spec, a_grid)
    peak = np.unravel_index(np.argmax(np.abs(field.values)), field.values.shape)
    print(f"coefficient field: {field.values.shape[0]} scales x "
          f"{field.values.shape[1]} positions, peak at scale "
          f"{a_grid.nodes[peak[0]]:.3f}, position {grid.nodes[peak[1]]:.3f}")

    # the spectral window K rises toward 1 as the scale window widens
    for window in [(1.0, 2.0), (0.5, 4.0), (0.25, 8.0)]:
        k1 = calderon_K(spec, window, 1.0)
        print(f"window {window}: K(1) = {k1:.4f}")

    nf = lp_norm(f, 2, GAMMA)
    print("windowed reconstruction error:")
    for window in [(1.0, 2.0), (0.5, 4.0), (0.25, 8.0)]:
        ag = make_scale_grid(window[0], window[1], 32.0)
        rec = calderon_reconstruct(f, spec, window, ag)
        err = lp_norm(SampledFunction(grid, rec.values - f.values), 2, GAMMA) / nf
        print(f"  window {window}: {err:.3e}")

    print(f"done in {time.time() - t0:.1f} s")
