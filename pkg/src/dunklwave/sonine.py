"""Sonine transform between Dunkl orders and its dual.

The forward transform X maps functions from order alpha to order beta by
integrating against the interior kernel; the dual map acts on the half
line exterior to |y| and lowers the order.  Both are computed with
Gauss-Jacobi rules that absorb the algebraic endpoint factors, so the
singular exponent range (beta - alpha < 1) stays usable.
"""

from __future__ import annotations

from functools import lru_cache
import math
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import roots_jacobi

from .errors import DecayError
from .grids import SampledFunction, WeightedGrid
from .kernels import Order, SoninePair, _gamma_of

__all__ = [
    "sonine_apply",
    "sonine_transform",
    "dual_sonine_pointwise",
    "dual_sonine_transform",
    "dual_intertwining_pointwise",
    "dual_intertwining_V",
]

FuncLike = Union[SampledFunction, Callable[[np.ndarray], np.ndarray]]


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, a: float, b: float):
    s, w = roots_jacobi(n, a, b)
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


@lru_cache(maxsize=8)
def _legendre_rule(n: int):
    s, w = np.polynomial.legendre.leggauss(n)
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


def _as_callable(f: FuncLike) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(f, SampledFunction):
        return f.evaluator()
    if callable(f):
        return f
    raise TypeError("expected a SampledFunction or a callable")


def sonine_apply(f: FuncLike, pair: SoninePair, x, order: int = 64):
    """Forward Sonine transform at the points ``x``.

    Uses the interior kernel folded onto t in (0, 1) with a Jacobi rule
    of the stated order; the remaining (1+t)^e factor is smooth and is
    kept in the integrand.  At x = 0 the kernel degenerates and the
    transform reduces to f(0).
    """
    fe = _as_callable(f)
    e = pair.exponent
    alpha = pair.alpha.gamma
    s, w = _jacobi_rule(order, e, 2.0 * alpha + 1.0)
    t = 0.5 * (1.0 + s)
    smooth = w * (1.0 + t) ** e
    const = pair.normalizer * 2.0 ** (-(2.0 * alpha + 2.0 + e))

    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x_arr.shape, dtype=complex)
    nz = x_arr != 0.0
    if np.any(nz):
        nodes = x_arr[nz, None] * t[None, :]
        fp = np.asarray(fe(nodes.ravel())).reshape(nodes.shape)
        fm = np.asarray(fe(-nodes.ravel())).reshape(nodes.shape)
        vals = (1.0 + t)[None, :] * fp + (1.0 - t)[None, :] * fm
        out[nz] = const * (vals @ smooth)
    if not np.all(nz):
        out[~nz] = complex(np.asarray(fe(np.array([0.0])))[0])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return out[0]
    return out


def sonine_transform(
    f: FuncLike,
    pair: SoninePair,
    grid: Optional[WeightedGrid] = None,
    order: int = 64,
) -> SampledFunction:
    """Sample the forward Sonine transform on a grid."""
    if grid is None:
        if not isinstance(f, SampledFunction):
            raise ValueError("a grid is required when f is a bare callable")
        grid = f.grid
    values = sonine_apply(f, pair, grid.nodes, order=order)
    return SampledFunction(grid=grid, values=values)


def _check_decay(fe, radius: float, power: float, tol: float) -> None:
    # probe a little inside the boundary as well: spline-backed samples
    # report zero beyond their outermost node, which sits short of the radius
    r = radius * (1.0 - np.arange(4) / 1000.0)
    edge = np.asarray(fe(np.concatenate([r, -r])))
    worst = float(np.max(np.abs(edge))) * radius**power
    if not worst < tol:
        raise DecayError(
            f"boundary weight {worst:.3e} at radius {radius:g} exceeds {tol:g}; "
            "increase the radius or supply a faster-decaying input"
        )


def _half_line_integral(
    fe,
    y: float,
    e: float,
    radius: float,
    first_order: int,
    panel_order: int,
) -> complex:
    """integral over [|y|, radius] of (x^2-y^2)^e [(x+y)f(x)+(x-y)f(-x)] dx.

    The algebraic factor (x-|y|)^e is absorbed by a Jacobi rule on the
    first panel [|y|, 2|y|]; the rest is covered by Gauss-Legendre panels
    whose widths grow geometrically away from the singular edge.
    """
    ay = abs(y)
    if ay >= radius:
        return 0.0 + 0.0j

    def bracket(x: np.ndarray) -> np.ndarray:
        return (x + y) * np.asarray(fe(x)) + (x - y) * np.asarray(fe(-x))

    if ay == 0.0:
        # integrand is x^(2e+1) [f(x) + f(-x)]; absorb the power exactly
        s, w = _jacobi_rule(max(first_order, panel_order), 0.0, 2.0 * e + 1.0)
        t = 0.5 * (1.0 + s)
        x = radius * t
        vals = np.asarray(fe(x)) + np.asarray(fe(-x))
        return radius ** (2.0 * e + 2.0) * 2.0 ** (-(2.0 * e + 2.0)) * np.dot(w, vals)

    total = 0.0 + 0.0j
    wmax = min(2.0, radius / ay)
    s, w = _jacobi_rule(first_order, 0.0, e)
    half = 0.5 * (wmax - 1.0)
    wn = 1.0 + half * (1.0 + s)
    x = ay * wn
    vals = (wn + 1.0) ** e * bracket(x)
    total += ay ** (2.0 * e + 1.0) * half ** (e + 1.0) * np.dot(w, vals)

    x0 = ay * wmax
    if x0 >= radius:
        return total
    sg, wg = _legendre_rule(panel_order)
    h = ay
    while x0 < radius:
        h = min(2.0 * h, 8.0)
        x1 = min(x0 + h, radius)
        mid = 0.5 * (x0 + x1)
        rad = 0.5 * (x1 - x0)
        x = mid + rad * sg
        vals = (x * x - y * y) ** e * bracket(x)
        total += rad * np.dot(wg, vals)
        x0 = x1
    return total


def dual_sonine_pointwise(
    f: FuncLike,
    pair: SoninePair,
    radius: float,
    first_order: int = 24,
    panel_order: int = 24,
    decay_tol: float = 1e-12,
):
    """Pointwise evaluator for the dual Sonine transform.

    Checks that the input decays fast enough for the truncation radius
    before returning the evaluator; raises DecayError otherwise.
    """
    fe = _as_callable(f)
    beta = pair.beta.gamma
    _check_decay(fe, radius, 2.0 * beta + 2.0, decay_tol)
    e = pair.exponent
    const = pair.normalizer

    def apply(y) -> np.ndarray:
        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty(y_arr.shape, dtype=complex)
        for i, yi in enumerate(y_arr):
            out[i] = const * _half_line_integral(
                fe, yi, e, radius, first_order, panel_order
            )
        if np.isscalar(y) or np.asarray(y).ndim == 0:
            return out[0]
        return out

    return apply


def dual_sonine_transform(
    f: FuncLike,
    pair: SoninePair,
    grid: Optional[WeightedGrid] = None,
    radius: Optional[float] = None,
    first_order: int = 24,
    panel_order: int = 24,
    decay_tol: float = 1e-12,
) -> SampledFunction:
    """Dual Sonine transform sampled on a grid.

    The truncation radius defaults to the grid radius; the boundary
    decay requirement |f(+-R)| R^(2 beta + 2) < decay_tol is enforced.
    """
    if grid is None:
        if not isinstance(f, SampledFunction):
            raise ValueError("a grid is required when f is a bare callable")
        grid = f.grid
    if radius is None:
        radius = grid.radius
    apply = dual_sonine_pointwise(
        f, pair, radius, first_order=first_order,
        panel_order=panel_order, decay_tol=decay_tol,
    )
    return SampledFunction(grid=grid, values=apply(grid.nodes))


def _intertwining_constant(gamma: float) -> float:
    return math.gamma(gamma + 1.0) / (math.sqrt(math.pi) * math.gamma(gamma + 0.5))


def dual_intertwining_pointwise(
    f: FuncLike,
    order,
    radius: float,
    first_order: int = 24,
    panel_order: int = 24,
    decay_tol: float = 1e-12,
):
    """Pointwise evaluator for the dual intertwining operator at one order.

    Same half-line machinery as the dual Sonine transform with exponent
    gamma - 1/2 and the beta-function normalizer for a single order; the
    limiting order gamma = -1/2 degenerates to the identity and is
    rejected.
    """
    g = _gamma_of(order)
    if g <= -0.5:
        raise ValueError("dual intertwining operator needs gamma > -1/2")
    fe = _as_callable(f)
    _check_decay(fe, radius, 2.0 * g + 2.0, decay_tol)
    e = g - 0.5
    const = _intertwining_constant(g)

    def apply(y) -> np.ndarray:
        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty(y_arr.shape, dtype=complex)
        for i, yi in enumerate(y_arr):
            out[i] = const * _half_line_integral(
                fe, yi, e, radius, first_order, panel_order
            )
        if np.isscalar(y) or np.asarray(y).ndim == 0:
            return out[0]
        return out

    return apply


def dual_intertwining_V(
    f: FuncLike,
    order,
    grid: Optional[WeightedGrid] = None,
    radius: Optional[float] = None,
    first_order: int = 24,
    panel_order: int = 24,
    decay_tol: float = 1e-12,
) -> SampledFunction:
    """Dual intertwining operator sampled on a grid."""
    if grid is None:
        if not isinstance(f, SampledFunction):
            raise ValueError("a grid is required when f is a bare callable")
        grid = f.grid
    if radius is None:
        radius = grid.radius
    apply = dual_intertwining_pointwise(
        f, order, radius, first_order=first_order,
        panel_order=panel_order, decay_tol=decay_tol,
    )
    return SampledFunction(grid=grid, values=apply(grid.nodes))
