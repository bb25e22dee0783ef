from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np
from scipy import special

from ..common.errors import DomainError, PoleAtNonpositiveInteger

MAX_BESSEL_ORDER = 10.0


def _check_pole(x: float) -> None:
    if x <= 0 and float(x).is_integer():
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {x}", argument=x)


def log_gamma(x: float) -> float:
    """log|Gamma(x)|."""
    x = float(x)
    _check_pole(x)
    return float(special.gammaln(x))


def gamma_sign(x: float) -> int:
    x = float(x)
    _check_pole(x)
    return int(special.gammasgn(x))


def log_gamma_ratio(numerator: Sequence[float], denominator: Sequence[float]) -> Tuple[float, int]:
    """log|prod Gamma(numerator) / prod Gamma(denominator)| and its sign."""
    log_value = 0.0
    sign = 1
    for x in numerator:
        log_value += log_gamma(x)
        sign *= gamma_sign(x)
    for x in denominator:
        log_value -= log_gamma(x)
        sign *= gamma_sign(x)
    return log_value, sign


def _check_bessel_domain(nu: float, x: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("Bessel K arguments must be finite", order=nu, argument=x)
    if x <= 0:
        raise DomainError("Bessel K needs a positive argument", argument=x)
    if abs(nu) > MAX_BESSEL_ORDER:
        raise DomainError(
            f"Bessel K order is limited to |nu| <= {MAX_BESSEL_ORDER:g}",
            order=nu,
            limit=MAX_BESSEL_ORDER,
        )


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function of the second kind, real order."""
    nu, x = float(nu), float(x)
    _check_bessel_domain(nu, x)
    return float(special.kv(nu, x))


def log_bessel_k(nu: float, x: float) -> float:
    """log K_nu(x), finite where K itself over- or underflows."""
    nu, x = float(nu), float(x)
    _check_bessel_domain(nu, x)
    scaled = float(special.kve(nu, x))
    if np.isfinite(scaled) and scaled > 0:
        return math.log(scaled) - x
    order = abs(nu)
    if order == 0:
        return math.log(-math.log(x / 2) - np.euler_gamma)
    # small argument: K_nu(x) ~ Gamma(nu)/2 * (2/x)**nu
    return log_gamma(order) - math.log(2.0) + order * math.log(2.0 / x)
