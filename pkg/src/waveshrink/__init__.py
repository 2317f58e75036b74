"""waveshrink: wavelet shrinkage and thresholding toolkit.

Orthogonal DWT with periodic boundaries, a catalog of shrinkage rules, the
shrinkage <-> nonlinear-diffusion and shrinkage <-> penalized-least-squares
correspondences, block thresholding estimators, wavelet-domain partially
linear models, and a Monte Carlo benchmark harness.
"""

from . import kernels
from .block import BLOCK_JS_LAMBDA, BlockConfig, block_js, neigh_block, neigh_coeff
from .denoise import (
    DenoiseConfig,
    denoise,
    linear_shrink_denoise,
    mad_sigma,
    universal_threshold,
)
from .diffusion import (
    Diffusivity,
    diffusion_step,
    diffusivity_to_shrink,
    haar_shift_shrink_step,
    named_diffusivity,
    shrink_to_diffusivity,
)
from .filters import FilterPair, available_wavelets, daubechies, get_wavelet, haar
from .penalty import (
    PenaltyFunction,
    generalized_inverse,
    penalized_ls_minimizer,
    penalty_from_rule,
)
from .plm import (
    FitConvergenceError,
    PLMData,
    PLMFit,
    estimate_sigma_qr,
    fit_plm,
    huber_loss,
    rho_from_rule,
    theta_given_beta,
)
from .rules import RULE_KINDS, ShrinkageRule, limiting_cases_check, parse_rule
from .rules import apply as apply_rule
from .signals import SIGNAL_NAMES, get_signal, make_noisy, sample_signal
from .transform import WaveletDecomposition, cycle_spin_denoise, dwt, idwt

__version__ = "0.1.0"

__all__ = [
    "kernels",
    "BLOCK_JS_LAMBDA",
    "BlockConfig",
    "block_js",
    "neigh_block",
    "neigh_coeff",
    "DenoiseConfig",
    "denoise",
    "linear_shrink_denoise",
    "mad_sigma",
    "universal_threshold",
    "Diffusivity",
    "diffusion_step",
    "diffusivity_to_shrink",
    "haar_shift_shrink_step",
    "named_diffusivity",
    "shrink_to_diffusivity",
    "FilterPair",
    "available_wavelets",
    "daubechies",
    "get_wavelet",
    "haar",
    "PenaltyFunction",
    "generalized_inverse",
    "penalized_ls_minimizer",
    "penalty_from_rule",
    "FitConvergenceError",
    "PLMData",
    "PLMFit",
    "estimate_sigma_qr",
    "fit_plm",
    "huber_loss",
    "rho_from_rule",
    "theta_given_beta",
    "RULE_KINDS",
    "ShrinkageRule",
    "apply_rule",
    "limiting_cases_check",
    "parse_rule",
    "SIGNAL_NAMES",
    "get_signal",
    "make_noisy",
    "sample_signal",
    "WaveletDecomposition",
    "cycle_spin_denoise",
    "dwt",
    "idwt",
]
