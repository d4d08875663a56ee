"""Dunkl harmonic analysis on the real line: transforms, translation,
convolution, wavelets, and the Sonine transform pair with its wavelet-based
inversion."""

from .errors import AdmissibilityError, DecayError
from .kernels import (
    Order,
    SoninePair,
    bessel_j,
    dunkl_kernel,
    dunkl_kernel_dx,
    plancherel_constant,
    sonine_kernel,
    sonine_normalizer,
    translation_weight,
)
from .grids import (
    SampledFunction,
    WeightedGrid,
    integrate_weighted,
    kahan_sum,
    lp_norm,
    make_grid,
    make_grid_from_edges,
    make_jacobi_grid,
    make_uniform_grid,
)
from .transforms import (
    TransformPlan,
    dunkl_convolve,
    dunkl_operator,
    dunkl_transform,
    dunkl_translate,
    inverse_dunkl_transform,
)
from .sonine import (
    dual_intertwining_V,
    dual_sonine_pointwise,
    dual_sonine_transform,
    sonine_apply,
    sonine_transform,
)
from .wavelets import (
    CalderonWindow,
    ScaleGrid,
    ScaleSpaceField,
    WaveletSpec,
    admissibility_constant,
    calderon_G,
    calderon_K,
    calderon_reconstruct,
    cwt,
    cwt_inner_product,
    dilate,
    make_scale_grid,
    pointwise_inverse,
    power_gaussian_generator,
    power_gaussian_profile,
    wavelet_atom,
    wavelet_from_generator,
    wavelet_from_profile,
)
from .sonine_inversion import (
    DualSonineWavelet,
    build_dual_sonine_wavelet,
    invert_dual_sonine,
    invert_dual_sonine_pointwise,
    scale_slice_exchange,
    sonine_image_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "DecayError",
    "Order",
    "SoninePair",
    "bessel_j",
    "dunkl_kernel",
    "dunkl_kernel_dx",
    "plancherel_constant",
    "sonine_kernel",
    "sonine_normalizer",
    "translation_weight",
    "SampledFunction",
    "WeightedGrid",
    "integrate_weighted",
    "kahan_sum",
    "lp_norm",
    "make_grid",
    "make_grid_from_edges",
    "make_jacobi_grid",
    "make_uniform_grid",
    "TransformPlan",
    "dunkl_convolve",
    "dunkl_operator",
    "dunkl_transform",
    "dunkl_translate",
    "inverse_dunkl_transform",
    "dual_intertwining_V",
    "dual_sonine_pointwise",
    "dual_sonine_transform",
    "sonine_apply",
    "sonine_transform",
    "CalderonWindow",
    "ScaleGrid",
    "ScaleSpaceField",
    "WaveletSpec",
    "admissibility_constant",
    "calderon_G",
    "calderon_K",
    "calderon_reconstruct",
    "cwt",
    "cwt_inner_product",
    "dilate",
    "make_scale_grid",
    "pointwise_inverse",
    "power_gaussian_generator",
    "power_gaussian_profile",
    "wavelet_atom",
    "wavelet_from_generator",
    "wavelet_from_profile",
    "DualSonineWavelet",
    "build_dual_sonine_wavelet",
    "invert_dual_sonine",
    "invert_dual_sonine_pointwise",
    "scale_slice_exchange",
    "sonine_image_spectrum",
]
