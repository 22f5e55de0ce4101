"""Entropy-rate upper bounds for discrete-valued stationary processes.

The bounds take only second-order statistics: either a full power spectral
density (:func:`gaussian_psd_bound`) or a finite run of autocovariances
(:func:`tdist_bound_k`, :func:`tdist_bound_1`).  A catalogue of example
processes with exact second-order statistics, plus seeded simulation
oracles, lives in :mod:`entrobound.processes` and :mod:`entrobound.montecarlo`.
"""

from .bounds import (
    BetaVector,
    BoundResult,
    gaussian_entropy_rate,
    gaussian_psd_bound,
    tdist_bound_1,
    tdist_bound_k,
    univariate_me_bound,
)
from .montecarlo import (
    EstimateWithError,
    SamplePath,
    empirical_conditional_entropy,
    empirical_covariance,
    simulate,
)
from .numerics import (
    ConvergenceError,
    DomainError,
    QuadratureMethod,
    QuadratureSpec,
    SeriesSpec,
    bilateral_sum,
    integrate_gaussian_weighted,
    integrate_periodic,
    log_gamma,
    std_normal_cdf,
)
from .processes import (
    BinomialEmission,
    DmaModel,
    InvariantViolationError,
    PoissonEmission,
    PoissonModel,
    QuantizedArModel,
    QuantizedMaModel,
    TwoStateHmm,
    dma_covariance,
    dma_psd,
    hmm_alpha_beta_omega,
    hmm_covariance,
    hmm_entropy_bound,
    hmm_psd,
    poisson_entropy,
    poisson_me_bound,
    qar_conditional_entropy,
    qar_r0,
    qar_rk,
    qar_th2_bound,
    qma_conditional_entropy,
    qma_k_ratio,
    qma_r0,
    qma_r1,
    qma_th1_bound,
    qma_th3_bound,
    quantize,
)
from .spectrum import (
    CovarianceSequence,
    PsdValidationError,
    SpectralDensity,
    ToeplitzSpec,
    closed_form_log_cos_integral,
    fiedler_determinant_check,
    psd_from_finite_covariance,
    toeplitz_gaussian_bound_finite,
    tridiagonal_determinant,
)

__version__ = "0.1.0"

__all__ = [
    "BetaVector",
    "BinomialEmission",
    "BoundResult",
    "ConvergenceError",
    "CovarianceSequence",
    "DmaModel",
    "DomainError",
    "EstimateWithError",
    "InvariantViolationError",
    "PoissonEmission",
    "PoissonModel",
    "PsdValidationError",
    "QuadratureMethod",
    "QuadratureSpec",
    "QuantizedArModel",
    "QuantizedMaModel",
    "SamplePath",
    "SeriesSpec",
    "SpectralDensity",
    "ToeplitzSpec",
    "TwoStateHmm",
    "bilateral_sum",
    "closed_form_log_cos_integral",
    "dma_covariance",
    "dma_psd",
    "empirical_conditional_entropy",
    "empirical_covariance",
    "fiedler_determinant_check",
    "gaussian_entropy_rate",
    "gaussian_psd_bound",
    "hmm_alpha_beta_omega",
    "hmm_covariance",
    "hmm_entropy_bound",
    "hmm_psd",
    "integrate_gaussian_weighted",
    "integrate_periodic",
    "log_gamma",
    "poisson_entropy",
    "poisson_me_bound",
    "psd_from_finite_covariance",
    "qar_conditional_entropy",
    "qar_r0",
    "qar_rk",
    "qar_th2_bound",
    "qma_conditional_entropy",
    "qma_k_ratio",
    "qma_r0",
    "qma_r1",
    "qma_th1_bound",
    "qma_th3_bound",
    "quantize",
    "simulate",
    "std_normal_cdf",
    "tdist_bound_1",
    "tdist_bound_k",
    "toeplitz_gaussian_bound_finite",
    "tridiagonal_determinant",
    "univariate_me_bound",
]
