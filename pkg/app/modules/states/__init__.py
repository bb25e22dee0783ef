from .families import (
    DEFAULT_MAX_DIM,
    DEFAULT_TOL,
    CoherentState,
    Family,
    annihilation_cs,
    displacement_cs,
    displacement_norm_profile,
    eigen_residual,
    exponential_cs,
    exponential_limit_ratio,
    ladder_series,
    photon_statistics,
    state_to_csv,
    state_to_json,
)
from .overlap import direct_norm, gamma_form, norm_hypergeometric, overlap, overlap_hypergeometric

__all__ = [
    "DEFAULT_MAX_DIM",
    "DEFAULT_TOL",
    "CoherentState",
    "Family",
    "annihilation_cs",
    "direct_norm",
    "displacement_cs",
    "displacement_norm_profile",
    "eigen_residual",
    "exponential_cs",
    "exponential_limit_ratio",
    "gamma_form",
    "ladder_series",
    "norm_hypergeometric",
    "overlap",
    "overlap_hypergeometric",
    "photon_statistics",
    "state_to_csv",
    "state_to_json",
]
