"""Exact and analytic machinery for periodic coefficient blocks of
half-integral weight q-expansions: character arithmetic, theta series,
Dirichlet-series convolution identities, completed L-functions, and
zero-free-region certification."""

from ._backend import backend_name
from .analytic import (
    CompletedL,
    ZeroFreeCertificate,
    completed_lambda,
    functional_eq_residual,
    gamma_ratio_zero_check,
    gauss_sum,
    hurwitz_zeta,
    l_value,
    log_gamma,
    partial_zeta_value,
    root_number,
    zero_free_certificate,
    zero_scan,
)
from .chars import (
    DirichletCharacter,
    character_by_index,
    enumerate_characters,
    generalized_bernoulli,
    kronecker,
    principal_character,
    twist_psi_d,
)
from .cli import detect_period
from .cyclo import CycloNumber
from .dseries import (
    DirichletSeriesCoeffs,
    beta_coefficient,
    beta_matrix,
    beta_reconstruction_table,
    beta_reconstruction_value,
    convolve,
    l_coeffs,
    partial_zeta_coeffs,
    reduce_to_primitive,
)
from .lift import (
    EisensteinForm,
    IdentityResidual,
    LiftParams,
    PeriodicityError,
    alpha_coeffs,
    hecke_eisenstein,
    master_identity_residual,
    remark_variant_residual,
    shimura_A,
)
from .qseries import (
    CoefficientBlock,
    QExpansion,
    block,
    hecke_Tp2,
    shift_V,
    theta_series,
    tp2_eigenvalue,
)

__version__ = "0.1.0"

__all__ = [
    "CompletedL", "ZeroFreeCertificate", "completed_lambda",
    "functional_eq_residual", "gamma_ratio_zero_check", "gauss_sum",
    "hurwitz_zeta", "l_value", "log_gamma", "partial_zeta_value",
    "root_number", "zero_free_certificate", "zero_scan",
    "DirichletCharacter", "character_by_index", "enumerate_characters",
    "generalized_bernoulli", "kronecker", "principal_character",
    "twist_psi_d", "detect_period", "CycloNumber",
    "DirichletSeriesCoeffs", "beta_coefficient", "beta_matrix",
    "beta_reconstruction_table", "beta_reconstruction_value", "convolve",
    "l_coeffs", "partial_zeta_coeffs", "reduce_to_primitive",
    "EisensteinForm", "IdentityResidual", "LiftParams", "PeriodicityError",
    "alpha_coeffs", "hecke_eisenstein", "master_identity_residual",
    "remark_variant_residual", "shimura_A",
    "CoefficientBlock", "QExpansion", "block", "hecke_Tp2", "shift_V",
    "theta_series", "tp2_eigenvalue",
    "backend_name", "__version__",
]
