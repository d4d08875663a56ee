"""Quadrature grids and sampled-function plumbing.

Symmetric composite Gauss-Legendre grids discretize integrals against the
weight |x|^(2 gamma + 1) on [-R, R]; Gauss-Jacobi rules own every endpoint
singularity. The |x|^(2 gamma + 1) factor is applied at integration time so a
single grid serves all orders at once. Reductions are Kahan-compensated in
ascending node order so results are reproducible bit-for-bit.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.special import roots_jacobi

from .kernels import _gamma_of


def kahan_sum(values) -> complex:
    """Compensated sum in the given order. Returns complex; take .real as needed."""
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for v in np.asarray(values).ravel():
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def kahan_matvec(matrix, vector):
    """matrix @ vector with Kahan compensation along the summation axis.

    Columns of `matrix` index the source nodes (ascending); the loop runs over
    them in fixed order so the reduction is deterministic.
    """
    matrix = np.asarray(matrix)
    vector = np.asarray(vector)
    out = np.zeros(matrix.shape[0], dtype=np.result_type(matrix.dtype, vector.dtype, np.complex128))
    comp = np.zeros_like(out)
    for k in range(matrix.shape[1]):
        y = matrix[:, k] * vector[k] - comp
        t = out + y
        comp = (t - out) - y
        out = t
    return out


@dataclass(frozen=True, eq=False)
class WeightedGrid:
    """Quadrature nodes and weights, plus the rule descriptor.

    Symmetric composite rules satisfy nodes == -nodes[::-1] exactly and carry
    matching weights, so odd integrands cancel to round-off.
    """

    nodes: np.ndarray
    weights: np.ndarray
    radius: float
    rule: str

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if np.any(np.abs(nodes) > self.radius * (1 + 1e-12)):
            raise ValueError("nodes outside [-R, R]")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    @property
    def is_symmetric(self) -> bool:
        return bool(
            np.array_equal(self.nodes, -self.nodes[::-1])
            and np.array_equal(self.weights, self.weights[::-1])
        )


def make_grid(radius: float, panels: int, order: int) -> WeightedGrid:
    """Composite Gauss-Legendre grid on [-radius, radius], symmetric under negation."""
    if radius <= 0 or panels <= 0 or order <= 0:
        raise ValueError("radius, panels, order must all be positive")
    ref_x, ref_w = np.polynomial.legendre.leggauss(int(order))
    edges = np.linspace(-radius, radius, int(panels) + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    # force exact closure under negation in floating point
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return WeightedGrid(nodes, weights, float(radius), f"composite-gl:{panels}x{order}")


def make_grid_from_edges(edges, order: int) -> WeightedGrid:
    """Composite Gauss-Legendre grid over explicit panel edges."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("need at least two panel edges")
    if not np.all(np.diff(edges) > 0):
        raise ValueError("panel edges must be strictly increasing")
    if order <= 0:
        raise ValueError("order must be positive")
    ref_x, ref_w = np.polynomial.legendre.leggauss(int(order))
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    radius = float(max(abs(edges[0]), abs(edges[-1])))
    return WeightedGrid(nodes, weights, radius, f"composite-gl-edges:{edges.size - 1}x{order}")


def make_uniform_grid(radius: float, count: int) -> WeightedGrid:
    """Uniform symmetric nodes with trapezoid weights; mainly an output grid."""
    if radius <= 0 or count < 2:
        raise ValueError("radius must be positive and count at least 2")
    n = int(count)
    step = 2.0 * radius / (n - 1)
    # mirror the upper half so the node array is bitwise symmetric,
    # which the transform plans require
    upper = (radius - step * np.arange(n // 2))[::-1]
    if n % 2:
        nodes = np.concatenate([-upper[::-1], [0.0], upper])
    else:
        nodes = np.concatenate([-upper[::-1], upper])
    weights = np.full(nodes.shape, step)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return WeightedGrid(nodes, weights, float(radius), f"uniform-trapezoid:{count}")


def make_jacobi_grid(exponent: float, order: int) -> WeightedGrid:
    """Gauss-Jacobi rule on (-1, 1) for the weight (1 - t^2)^exponent."""
    if exponent <= -1.0:
        raise ValueError("jacobi exponent must exceed -1")
    if order <= 0:
        raise ValueError("order must be positive")
    t, w = roots_jacobi(int(order), exponent, exponent)
    srt = np.argsort(t)
    return WeightedGrid(t[srt], w[srt], 1.0, f"gauss-jacobi:{exponent}:{order}")


@dataclass
class SampledFunction:
    """Complex samples on a WeightedGrid, optionally with analytic derivative samples.

    `func`/`dfunc` keep the generating callables when the samples came from one,
    so downstream quadratures can evaluate off-grid without interpolation.
    """

    grid: WeightedGrid
    values: np.ndarray
    derivative_values: np.ndarray | None = None
    func: object = None
    dfunc: object = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.nodes.shape:
            raise ValueError("values must align with grid nodes")
        if self.derivative_values is not None:
            self.derivative_values = np.asarray(self.derivative_values, dtype=complex)
            if self.derivative_values.shape != self.grid.nodes.shape:
                raise ValueError("derivative_values must align with grid nodes")

    @classmethod
    def from_callable(cls, f, grid: WeightedGrid, df=None):
        vals = np.asarray(f(grid.nodes), dtype=complex)
        dvals = np.asarray(df(grid.nodes), dtype=complex) if df is not None else None
        return cls(grid, vals, dvals, func=f, dfunc=df)

    def evaluator(self):
        """Callable evaluating the function anywhere on [-R, R].

        Prefers the original callable; otherwise builds a quintic spline of the
        samples (zero outside the grid domain, where the decaying test families
        are negligible anyway).
        """
        if self.func is not None:
            return self.func
        cached = getattr(self, "_spline_eval", None)
        if cached is None:
            x = self.grid.nodes
            re = make_interp_spline(x, self.values.real, k=5)
            im = make_interp_spline(x, self.values.imag, k=5)
            lo, hi = x[0], x[-1]

            def _eval(y, _re=re, _im=im, _lo=lo, _hi=hi):
                y = np.asarray(y, dtype=float)
                scalar = y.ndim == 0
                y = np.atleast_1d(y)
                inside = (y >= _lo) & (y <= _hi)
                out = np.zeros(y.shape, dtype=complex)
                if np.any(inside):
                    yi = y[inside]
                    out[inside] = _re(yi) + 1j * _im(yi)
                return complex(out[0]) if scalar else out

            cached = _eval
            self._spline_eval = cached
        return cached

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["x", "re", "im"]
            rows = [self.grid.nodes, self.values.real, self.values.imag]
            if self.derivative_values is not None:
                header += ["dre", "dim"]
                rows += [self.derivative_values.real, self.derivative_values.imag]
            writer.writerow(header)
            for row in zip(*rows):
                writer.writerow([repr(float(v)) for v in row])

    @classmethod
    def from_csv(cls, path, grid: WeightedGrid | None = None):
        """Read samples; if `grid` is given the x column must match its nodes."""
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise ValueError(f"{path}: empty CSV")
            cols = [h.strip() for h in header]
            if cols[:3] != ["x", "re", "im"]:
                raise ValueError(f"{path}: expected header x,re,im[,dre,dim]")
            data = [[float(c) for c in row] for row in reader if row]
        if not data:
            raise ValueError(f"{path}: no sample rows")
        arr = np.asarray(data, dtype=float)
        x = arr[:, 0]
        vals = arr[:, 1] + 1j * arr[:, 2]
        dvals = arr[:, 3] + 1j * arr[:, 4] if arr.shape[1] >= 5 else None
        if grid is None:
            # weights are unknown for external samples; use trapezoid cells so
            # norms remain computable
            w = np.empty_like(x)
            w[1:-1] = 0.5 * (x[2:] - x[:-2])
            w[0] = 0.5 * (x[1] - x[0])
            w[-1] = 0.5 * (x[-1] - x[-2])
            if np.any(w <= 0):
                raise ValueError(f"{path}: x column must be strictly increasing")
            grid = WeightedGrid(x, w, float(np.max(np.abs(x))), "imported-trapezoid")
        else:
            if x.shape != grid.nodes.shape or not np.allclose(x, grid.nodes, atol=1e-12, rtol=0):
                raise ValueError(f"{path}: x column does not match the configured grid")
        return cls(grid, vals, dvals)


def integrate_weighted(f: SampledFunction, order) -> complex:
    """Integral of f against |x|^(2 gamma + 1) dx over the grid domain."""
    g = _gamma_of(order)
    x = f.grid.nodes
    terms = f.grid.weights * f.values * np.abs(x) ** (2.0 * g + 1.0)
    return kahan_sum(terms)


def lp_norm(f: SampledFunction, p, order) -> float:
    """Weighted L^p norm for p in {1, 2, inf} (inf ignores the weight)."""
    g = _gamma_of(order)
    if p == 1:
        mag = SampledFunction(f.grid, np.abs(f.values))
        return float(integrate_weighted(mag, g).real)
    if p == 2:
        sq = SampledFunction(f.grid, np.abs(f.values) ** 2)
        return float(math.sqrt(max(integrate_weighted(sq, g).real, 0.0)))
    if p in (np.inf, math.inf, "inf"):
        return float(np.max(np.abs(f.values))) if len(f.values) else 0.0
    raise ValueError(f"p must be 1, 2 or inf, got {p!r}")
