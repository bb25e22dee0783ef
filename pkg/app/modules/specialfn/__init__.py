from .functions import bessel_k, gamma_sign, log_bessel_k, log_gamma, log_gamma_ratio
from .quadrature import quad_semi_infinite, truncation_radius
from .series import SeriesResult, pfq

__all__ = [
    "SeriesResult",
    "bessel_k",
    "gamma_sign",
    "log_bessel_k",
    "log_gamma",
    "log_gamma_ratio",
    "pfq",
    "quad_semi_infinite",
    "truncation_radius",
]
