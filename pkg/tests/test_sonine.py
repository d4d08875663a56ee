import math

import numpy as np
import pytest

from dunklwave.errors import DecayError
from dunklwave.grids import SampledFunction, integrate_weighted, make_grid
from dunklwave.kernels import Order, SoninePair, dunkl_kernel, sonine_kernel
from dunklwave.sonine import (
    dual_intertwining_V,
    dual_sonine_pointwise,
    dual_sonine_transform,
    sonine_apply,
    sonine_transform,
)
from dunklwave.transforms import TransformPlan, dunkl_transform


def gauss(x):
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2)


def test_constant_maps_to_one(pair):
    x = np.linspace(-6.0, 6.0, 25)
    ones = lambda y: np.ones_like(np.asarray(y, dtype=float))
    got = sonine_apply(ones, pair, x)
    assert np.max(np.abs(got - 1.0)) < 1e-14


def test_value_at_origin_is_preserved(pair):
    got = sonine_apply(gauss, pair, 0.0)
    assert abs(got - 1.0) < 1e-15


def test_gaussian_image_closed_form(pair):
    # for the (1/2, 3/2) pair: X g (x) = 3 (sqrt(pi/2) erf(x/sqrt(2)) - x exp(-x^2/2)) / x^3
    x = np.linspace(0.3, 5.0, 12)
    got = sonine_apply(gauss, pair, x)
    want = 3.0 * (math.sqrt(math.pi / 2.0) * np.array([math.erf(v) for v in x / math.sqrt(2.0)])
                  - x * np.exp(-0.5 * x ** 2)) / x ** 3
    assert np.max(np.abs(got - want)) < 1e-14


def test_kernel_reproduction(pair):
    x = np.linspace(-4.0, 4.0, 17)
    for lam in (0.5, 2.0):
        got = sonine_apply(lambda y: dunkl_kernel(pair.alpha, lam, y), pair, x)
        want = dunkl_kernel(pair.beta, lam, x)
        assert np.max(np.abs(got - want)) < 1e-12


def test_kernel_reproduction_singular_pair():
    # beta - alpha - 1 < 0 puts an integrable singularity at the endpoint
    pair = SoninePair(Order(0.5), Order(1.0))
    x = np.linspace(-4.0, 4.0, 17)
    got = sonine_apply(lambda y: dunkl_kernel(pair.alpha, 1.3, y), pair, x)
    want = dunkl_kernel(pair.beta, 1.3, x)
    assert np.max(np.abs(got - want)) < 1e-12


def test_parity_preserved(pair):
    x = np.linspace(0.2, 4.0, 9)
    odd = lambda y: np.asarray(y, dtype=float) * gauss(y)
    plus = sonine_apply(odd, pair, x)
    minus = sonine_apply(odd, pair, -x)
    assert np.max(np.abs(plus + minus)) < 1e-15


def test_transform_depends_only_on_enclosed_samples(pair):
    # X f(x) reads f only on [-|x|, |x|]
    inner = lambda y: gauss(y)
    outer = lambda y: np.where(np.abs(np.asarray(y, dtype=float)) <= 1.0, gauss(y), 0.0)
    a = sonine_apply(inner, pair, 0.7)
    b = sonine_apply(outer, pair, 0.7)
    assert abs(a - b) < 1e-15


def test_sonine_kernel_support(pair):
    y = np.array([-3.0, -0.5, 0.5, 1.4, 2.9])
    vals = sonine_kernel(pair, 1.5, y)
    assert np.all(vals[np.abs(y) >= 1.5] == 0.0)
    assert np.all(vals[np.abs(y) < 1.5] != 0.0)
    with pytest.raises(ValueError):
        sonine_kernel(pair, 0.0, y)


def test_kernel_quadrature_matches_apply(pair):
    # direct weighted integral of the kernel against f, on a fine grid
    xv = 1.7
    g = make_grid(abs(xv), 64, 16)
    f = gauss(g.nodes)
    kern = sonine_kernel(pair, xv, g.nodes)
    alpha = pair.alpha.gamma
    direct = np.dot(g.weights, kern * f * np.abs(g.nodes) ** (2.0 * alpha + 1.0))
    got = sonine_apply(gauss, pair, xv)
    assert abs(direct - got) < 1e-10


def test_dual_gaussian_closed_forms(grid12):
    f = SampledFunction.from_callable(gauss, grid12)
    tf = dual_sonine_transform(f, SoninePair(Order(0.5), Order(1.5)), grid=grid12)
    assert np.max(np.abs(tf.values - 3.0 * gauss(grid12.nodes))) < 1e-12
    tg = dual_sonine_transform(f, SoninePair(Order(0.5), Order(1.0)), grid=grid12)
    want = 4.0 / math.sqrt(2.0 * math.pi) * gauss(grid12.nodes)
    assert np.max(np.abs(tg.values - want)) < 1e-12


def test_transmutation_identity(grid12, pair):
    # transform at beta equals transform at alpha after the dual operator
    plan_a = TransformPlan(grid12, grid12, pair.alpha.gamma)
    plan_b = TransformPlan(grid12, grid12, pair.beta.gamma)
    x = grid12.nodes
    f = SampledFunction(grid12, (x ** 2 * gauss(x)).astype(complex))
    lhs = dunkl_transform(f, plan_b)
    rhs = dunkl_transform(dual_sonine_transform(f, pair, grid=grid12), plan_a)
    scale = np.max(np.abs(lhs.values))
    # spline-backed input on the coarse grid costs a few digits
    assert np.max(np.abs(lhs.values - rhs.values)) / scale < 2e-9


def test_duality_pairing(grid12, pair):
    f = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    xf = sonine_transform(f, pair, grid=grid12)
    gs = SampledFunction.from_callable(gauss, grid12)
    lhs = integrate_weighted(SampledFunction(grid12, xf.values * gauss(grid12.nodes)),
                             pair.beta.gamma)
    tg = dual_sonine_transform(gs, pair, grid=grid12)
    rhs = integrate_weighted(SampledFunction(grid12, f(grid12.nodes) * tg.values),
                             pair.alpha.gamma)
    assert abs(lhs - rhs) / abs(lhs) < 1e-12


def test_factorization_through_boundary_operator(grid12, pair):
    f = SampledFunction.from_callable(gauss, grid12)
    tf = dual_sonine_transform(f, pair, grid=grid12)
    lhs = dual_intertwining_V(tf, pair.alpha.gamma, grid=grid12)
    rhs = dual_intertwining_V(f, pair.beta.gamma, grid=grid12)
    sample = np.linspace(-4.0, 4.0, 21)
    diff = lhs.evaluator()(sample) - rhs.evaluator()(sample)
    assert np.max(np.abs(diff)) / np.max(np.abs(rhs.evaluator()(sample))) < 1e-8


def test_dual_transform_requires_boundary_decay(grid12):
    slow = SampledFunction(grid12, (1.0 / (1.0 + grid12.nodes ** 2)).astype(complex))
    with pytest.raises(DecayError):
        dual_sonine_transform(slow, SoninePair(Order(0.5), Order(1.5)), grid=grid12)


def test_bare_callable_needs_grid(pair):
    with pytest.raises(ValueError):
        sonine_transform(gauss, pair)
    with pytest.raises(ValueError):
        dual_sonine_transform(gauss, pair)


def test_dual_pointwise_matches_grid_version(grid12, pair):
    f = SampledFunction.from_callable(gauss, grid12)
    apply = dual_sonine_pointwise(gauss, pair, grid12.radius)
    full = dual_sonine_transform(f, pair, grid=grid12)
    pts = np.array([-2.3, 0.0, 1.1])
    idx = [np.argmin(np.abs(grid12.nodes - p)) for p in pts]
    got = apply(grid12.nodes[idx])
    assert np.max(np.abs(got - full.values[idx])) < 1e-14
