import math

import numpy as np
import pytest

from dunklwave.kernels import (
    Order,
    SoninePair,
    bessel_j,
    dunkl_kernel,
    dunkl_kernel_dx,
    plancherel_constant,
    sonine_normalizer,
)


def j_half(z):
    # elementary closed form at order 1/2, independent of the implementation
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    nz = z != 0
    out[nz] = np.sin(z[nz]) / z[nz]
    return out


def j_three_halves(z):
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    nz = z != 0
    zz = z[nz]
    out[nz] = 3.0 * (np.sin(zz) / zz - np.cos(zz)) / zz ** 2
    return out


def test_bessel_half_integer_closed_forms():
    z = np.linspace(0.0, 30.0, 301)
    assert np.max(np.abs(bessel_j(0.5, z) - j_half(z))) < 3e-13
    assert np.max(np.abs(bessel_j(1.5, z) - j_three_halves(z))) < 3e-13


def test_bessel_small_argument_series_region():
    # exercise the series branch on both sides of the cutoff
    z = np.array([0.0, 1e-8, 0.3, 0.9, 1.1, 2.0])
    assert np.max(np.abs(bessel_j(0.5, z) - j_half(z))) < 1e-15


def test_bessel_is_even_and_one_at_zero():
    z = np.linspace(-8.0, 8.0, 17)
    vals = bessel_j(1.2, z)
    assert np.allclose(vals, vals[::-1], atol=1e-15)
    assert bessel_j(0.7, 0.0) == 1.0


def test_bessel_rejects_order_at_minus_one():
    with pytest.raises(ValueError):
        bessel_j(-1.0, 1.0)


def test_kernel_elementary_form_at_half():
    # e_{1/2}(i u) = sin(u)/u + i (sin(u)/u - cos(u))/u
    lam, x = 1.3, np.linspace(-5.0, 5.0, 41)
    u = lam * x
    got = dunkl_kernel(0.5, lam, x)
    want = j_half(u) + 1j * u / 3.0 * j_three_halves(u)
    assert np.max(np.abs(got - want)) < 1e-14


def test_kernel_value_at_zero_and_modulus_bound():
    assert dunkl_kernel(0.8, 0.0, 0.0) == 1.0 + 0.0j
    x = np.linspace(-20.0, 20.0, 401)
    assert np.max(np.abs(dunkl_kernel(0.8, 1.7, x))) <= 1.0 + 1e-12


def test_kernel_conjugate_symmetry():
    x = np.linspace(-4.0, 4.0, 9)
    a = dunkl_kernel(1.2, -2.1, x)
    b = dunkl_kernel(1.2, 2.1, x)
    assert np.max(np.abs(a - np.conj(b))) < 1e-15


def test_kernel_parity_in_x():
    x = np.linspace(0.1, 6.0, 23)
    plus = dunkl_kernel(0.5, 1.9, x)
    minus = dunkl_kernel(0.5, 1.9, -x)
    assert np.max(np.abs(plus.real - minus.real)) < 1e-15
    assert np.max(np.abs(plus.imag + minus.imag)) < 1e-15


def test_kernel_derivative_matches_finite_differences():
    g, lam = 0.9, 1.4
    x = np.linspace(-3.0, 3.0, 13)
    h = 1e-5
    fd = (dunkl_kernel(g, lam, x + h) - dunkl_kernel(g, lam, x - h)) / (2.0 * h)
    got = dunkl_kernel_dx(g, lam, x)
    assert np.max(np.abs(got - fd)) < 1e-9


def test_order_domain():
    Order(-0.49)
    with pytest.raises(ValueError):
        Order(-0.5)


def test_sonine_pair_constants():
    p = SoninePair(Order(0.5), Order(1.5))
    assert p.exponent == 0.0
    # Gamma(beta+1) / (Gamma(alpha+1) Gamma(beta-alpha))
    want = math.gamma(2.5) / (math.gamma(1.5) * math.gamma(1.0))
    assert abs(p.normalizer - want) < 1e-15
    assert abs(p.normalizer - 1.5) < 1e-15
    assert p.plancherel_ratio == 9.0

    q = SoninePair(Order(0.5), Order(1.0))
    assert q.exponent == -0.5
    assert abs(q.normalizer - 2.0 / math.pi) < 1e-15
    assert abs(q.plancherel_ratio - 8.0 / math.pi) < 1e-14


def test_sonine_pair_requires_increasing_orders():
    with pytest.raises(ValueError):
        SoninePair(Order(1.5), Order(0.5))


def test_plancherel_constant_closed_form():
    # 1 / (2^(2 gamma + 2) Gamma(gamma+1)^2); at gamma = 1/2 this is 1/(2 pi)
    assert abs(plancherel_constant(0.5) - 1.0 / (2.0 * math.pi)) < 1e-16
    g = 1.2
    want = 1.0 / (2.0 ** (2.0 * g + 2.0) * math.gamma(g + 1.0) ** 2)
    assert abs(plancherel_constant(g) - want) < 1e-16


def test_sonine_normalizer_matches_pair():
    assert sonine_normalizer(0.5, 1.5) == SoninePair(Order(0.5), Order(1.5)).normalizer
