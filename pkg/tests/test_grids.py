import math

import numpy as np
import pytest

from dunklwave.grids import (
    SampledFunction,
    integrate_weighted,
    lp_norm,
    make_grid,
    make_grid_from_edges,
    make_uniform_grid,
)


def test_composite_rule_is_symmetric():
    g = make_grid(16.0, 64, 16)
    assert g.is_symmetric
    assert np.all(g.weights > 0.0)
    assert g.nodes.size == 64 * 16


def test_polynomials_integrate_exactly():
    g = make_grid(3.0, 6, 8)
    for k in (0, 2, 4, 8, 12):
        got = float(np.dot(g.weights, g.nodes ** k))
        want = 2.0 * 3.0 ** (k + 1) / (k + 1)
        assert abs(got - want) / want < 1e-14


def test_weighted_gaussian_moment():
    # integral of exp(-x^2) |x|^(2g+1) dx over R equals Gamma(g+1)
    g = make_grid(10.0, 40, 12)
    # fractional gamma leaves |x|^(2g+1) with limited smoothness at the
    # panel edge at zero, so the rule is a touch less than spectral there
    for gamma in (0.0, 0.5, 1.2):
        f = SampledFunction(g, np.exp(-g.nodes ** 2).astype(complex))
        got = integrate_weighted(f, gamma)
        assert abs(got - math.gamma(gamma + 1.0)) < 1e-10


def test_lp_norms_of_gaussian():
    g = make_grid(10.0, 40, 12)
    f = SampledFunction(g, np.exp(-0.5 * g.nodes ** 2).astype(complex))
    gamma = 0.5
    # |f|^2 weight integral = Gamma(gamma+1); L1 of a positive f uses the same integral at half width
    assert abs(lp_norm(f, 2, gamma) - math.sqrt(math.gamma(1.5))) < 1e-13
    want_l1 = 2.0 ** (gamma + 1.0) * math.gamma(gamma + 1.0)
    assert abs(lp_norm(f, 1, gamma) - want_l1) < 1e-12
    # sup norm over the samples; the quadrature nodes exclude x = 0
    assert lp_norm(f, float("inf"), gamma) == np.max(np.abs(f.values))
    with pytest.raises(ValueError):
        lp_norm(f, 3, gamma)


def test_uniform_grid_trapezoid_weights():
    g = make_uniform_grid(4.0, 81)
    assert g.is_symmetric
    assert abs(np.sum(g.weights) - 8.0) < 1e-13


def test_grid_from_edges():
    edges = [-2.0, -0.5, 0.0, 0.5, 2.0]
    g = make_grid_from_edges(edges, 10)
    assert abs(np.sum(g.weights) - 4.0) < 1e-14
    assert g.rule.endswith("x10")


def test_csv_round_trip(tmp_path, gauss12):
    path = tmp_path / "f.csv"
    gauss12.to_csv(str(path))
    back = SampledFunction.from_csv(str(path))
    assert np.max(np.abs(back.values - gauss12.values)) == 0.0
    assert np.max(np.abs(back.grid.nodes - gauss12.grid.nodes)) == 0.0
    # derivative columns survive
    assert back.derivative_values is not None
    assert np.max(np.abs(back.derivative_values - gauss12.derivative_values)) == 0.0


def test_csv_import_gets_trapezoid_weights(tmp_path):
    path = tmp_path / "g.csv"
    x = np.linspace(-1.0, 1.0, 21)
    with open(path, "w") as fh:
        fh.write("x,re,im\n")
        for xi in x:
            fh.write(f"{xi},{math.exp(-xi * xi)},0.0\n")
    fs = SampledFunction.from_csv(str(path))
    assert fs.grid.rule.startswith("imported-trapezoid")
    assert abs(np.sum(fs.grid.weights) - 2.0) < 1e-12


def test_empty_csv_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("x,re,im\n")
    with pytest.raises(ValueError):
        SampledFunction.from_csv(str(path))


def test_evaluator_interpolates_and_vanishes_outside(grid12, gauss12):
    # spline-backed sample (no callable attached): interpolation inside,
    # exact zero beyond the grid radius
    fs = SampledFunction(grid12, gauss12.values)
    ev = fs.evaluator()
    x = np.array([0.123, 1.456, -3.21])
    assert np.max(np.abs(ev(x) - np.exp(-0.5 * x ** 2))) < 1e-8
    assert np.all(ev(np.array([15.0, -20.0])) == 0.0)


def test_from_callable_keeps_exact_evaluator(grid12):
    f = SampledFunction.from_callable(lambda x: np.cos(x), grid12)
    x = np.array([0.3, 7.9])
    assert np.max(np.abs(f.evaluator()(x) - np.cos(x))) == 0.0
