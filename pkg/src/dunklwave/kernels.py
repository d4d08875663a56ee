"""Pointwise kernels and constants for Dunkl analysis on the real line.

Everything here is a pure function of its arguments: the normalized Bessel
function j_gamma, the Dunkl kernel e_gamma(i lambda x) and its x-derivative,
the translation weight W_gamma, the Sonine kernel K_{alpha,beta}, and the
normalization constants attached to the transform and the Sonine pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

# The power series for j_gamma is summed on |z| <= SERIES_CUTOFF where it is
# numerically stable; beyond that the Bessel continuation takes over. The two
# branches agree to ~1e-12 on the overlap band around the cutoff.
SERIES_CUTOFF = 12.0
_SERIES_TERMS = 64


@dataclass(frozen=True)
class Order:
    """Dunkl parameter gamma, constrained to gamma > -1/2."""

    gamma: float

    def __post_init__(self):
        g = float(self.gamma)
        if not math.isfinite(g) or g <= -0.5:
            raise ValueError(f"order parameter must be finite and > -1/2, got {self.gamma}")
        object.__setattr__(self, "gamma", g)


def _gamma_of(order) -> float:
    """Accept an Order or a bare float for the gamma parameter."""
    return float(order.gamma) if isinstance(order, Order) else float(order)


@dataclass(frozen=True)
class SoninePair:
    """A pair of orders alpha < beta linked by the Sonine kernel."""

    alpha: Order
    beta: Order

    def __post_init__(self):
        a = self.alpha if isinstance(self.alpha, Order) else Order(self.alpha)
        b = self.beta if isinstance(self.beta, Order) else Order(self.beta)
        if not b.gamma > a.gamma:
            raise ValueError(f"need beta > alpha, got alpha={a.gamma}, beta={b.gamma}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def exponent(self) -> float:
        """Kernel exponent beta - alpha - 1 (negative means an integrable endpoint singularity)."""
        return self.beta.gamma - self.alpha.gamma - 1.0

    @property
    def normalizer(self) -> float:
        return sonine_normalizer(self.alpha.gamma, self.beta.gamma)

    @property
    def plancherel_ratio(self) -> float:
        """m_alpha / m_beta, computed through the Gamma recurrence when beta - alpha is an integer.

        The recurrence route keeps integer-step ratios exact in floating point
        (e.g. 9 for the (0.5, 1.5) pair) instead of dividing two rounded
        constants.
        """
        a, b = self.alpha.gamma, self.beta.gamma
        k = b - a
        ik = round(k)
        if abs(k - ik) < 1e-12 and ik >= 1:
            prod = 1.0
            for j in range(1, ik + 1):
                prod *= a + j
            return 4.0**ik * prod * prod
        return plancherel_constant(a) / plancherel_constant(b)


def bessel_j(order, z):
    """Normalized Bessel function j_gamma(z), even and equal to 1 at z = 0.

    Valid for gamma > -1 (one order above the Order domain, since the Dunkl
    kernel needs j_{gamma+1}). Accepts scalars or arrays.
    """
    g = _gamma_of(order)
    if g <= -1.0:
        raise ValueError(f"bessel_j needs gamma > -1, got {g}")
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("bessel_j: non-finite argument")
    scalar = z.ndim == 0
    z = np.atleast_1d(np.abs(z))
    out = np.empty_like(z)
    small = z <= SERIES_CUTOFF
    if np.any(small):
        out[small] = _bessel_series(g, z[small])
    large = ~small
    if np.any(large):
        zl = z[large]
        out[large] = math.gamma(g + 1.0) * (2.0 / zl) ** g * jv(g, zl)
    return float(out[0]) if scalar else out


def _bessel_series(g, z):
    """Kahan-summed power series, fixed term count.

    For |z| <= SERIES_CUTOFF the first omitted term is below 1e-79 (ratio
    argument: successive terms shrink by (z/2)^2 / ((n+1)(n+gamma+1))), so the
    truncation is invisible at double precision.
    """
    q = (z / 2.0) ** 2
    term = np.ones_like(z)
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    for n in range(_SERIES_TERMS):
        term = -term * q / ((n + 1.0) * (n + 1.0 + g))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def dunkl_kernel(order, lam, x):
    """Dunkl kernel e_gamma(i lam x) = j_gamma(lam x) + i lam x j_{gamma+1}(lam x) / (2 gamma + 2).

    Real part even in x, imaginary part odd; modulus bounded by 1 for real
    arguments. Accepts scalar or array lam/x (broadcast).
    """
    g = _gamma_of(order)
    z = np.asarray(lam, dtype=float) * np.asarray(x, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    val = bessel_j(g, z) + 1j * z / (2.0 * (g + 1.0)) * bessel_j(g + 1.0, z)
    return complex(val[0]) if scalar else val


def dunkl_kernel_dx(order, lam, x):
    """Derivative in x of e_gamma(i lam x), used to feed analytic derivatives to the Dunkl operator."""
    g = _gamma_of(order)
    lam_arr = np.asarray(lam, dtype=float)
    z = lam_arr * np.asarray(x, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    j1 = bessel_j(g + 1.0, z)
    j2 = bessel_j(g + 2.0, z)
    # d/dz j_{g+1}(z) = -z j_{g+2}(z) / (2g + 4)
    real = -z * j1 / (2.0 * (g + 1.0))
    imag = (j1 - z * z * j2 / (2.0 * (g + 2.0))) / (2.0 * (g + 1.0))
    val = lam_arr * (real + 1j * imag)
    return complex(val.reshape(-1)[0]) if scalar else val


def translation_weight(order, t):
    """Translation weight W_gamma(t) on (-1, 1).

    This is the weight as classically printed, with the (1+t) factor. The
    quadrature layer owns the endpoint singularity for gamma < 1/2; pointwise
    evaluation rejects |t| >= 1.
    """
    g = _gamma_of(order)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if np.any(np.abs(t) >= 1.0):
        raise ValueError("translation_weight: |t| must be < 1")
    c = math.gamma(g + 1.0) / (math.sqrt(math.pi) * math.gamma(g + 0.5))
    val = c * (1.0 + t) * (1.0 - t * t) ** (g - 0.5)
    return float(val[0]) if scalar else val


def sonine_normalizer(alpha, beta) -> float:
    """Constant a_{alpha,beta} = Gamma(beta+1) / (Gamma(alpha+1) Gamma(beta-alpha))."""
    a = _gamma_of(alpha)
    b = _gamma_of(beta)
    if not b > a:
        raise ValueError("sonine_normalizer needs beta > alpha")
    return math.gamma(b + 1.0) / (math.gamma(a + 1.0) * math.gamma(b - a))


def sonine_kernel(pair: SoninePair, x, y):
    """Sonine kernel K_{alpha,beta}(x, y), supported on |y| < |x|.

    Returns exactly 0 outside the support. x = 0 is rejected; the transform
    layer supplies the x = 0 value separately.
    """
    xv = float(x)
    if xv == 0.0:
        raise ValueError("sonine_kernel is undefined at x = 0")
    y = np.asarray(y, dtype=float)
    scalar = y.ndim == 0
    y = np.atleast_1d(y)
    e = pair.exponent
    out = np.zeros_like(y)
    inside = np.abs(y) < abs(xv)
    if np.any(inside):
        yi = y[inside]
        out[inside] = (
            pair.normalizer
            * math.copysign(1.0, xv)
            * (xv + yi)
            * (xv * xv - yi * yi) ** e
            / abs(xv) ** (2.0 * pair.beta.gamma + 1.0)
        )
    return float(out[0]) if scalar else out


def plancherel_constant(order) -> float:
    """Transform normalization m_gamma = 1 / (2^(2 gamma + 2) Gamma(gamma+1)^2)."""
    g = _gamma_of(order)
    return 1.0 / (2.0 ** (2.0 * g + 2.0) * math.gamma(g + 1.0) ** 2)
