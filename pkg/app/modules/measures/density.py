from __future__ import annotations

import logging
import math

from ..common.errors import DomainError
from ..common.rational import RationalLike, to_fraction
from ..specialfn import log_bessel_k

logger = logging.getLogger(__name__)


def _check(r: float, phi: RationalLike) -> float:
    if r <= 0:
        raise DomainError("densities are defined for r > 0", r=r)
    phi = to_fraction(phi)
    if phi >= 0:
        raise DomainError("the Barut-Girardello measure needs phi < 0", phi=phi)
    return float(phi)


def bg_density(r: float, phi: RationalLike) -> float:
    """r^(-2 phi - 1) K_(2 phi + 1)(2r), whose moments are Gamma(n+1) Gamma(n - 2 phi) / 4."""
    p = _check(r, phi)
    order = 2 * p + 1
    return math.exp(-order * math.log(r) + log_bessel_k(order, 2 * r))


def bg_density_printed(r: float, phi: RationalLike) -> float:
    """r^(-2 phi + 1) K_(1/2 + phi)(2r), the closed form as usually quoted.

    Its moments are not Gamma(n+1) Gamma(n - 2 phi); kept for comparison.
    """
    p = _check(r, phi)
    return math.exp((1 - 2 * p) * math.log(r) + log_bessel_k(0.5 + p, 2 * r))


def gaussian_density(r: float) -> float:
    """e^(-r^2): normalized moments n!, the oscillator ladder s[k] = k."""
    if r <= 0:
        raise DomainError("densities are defined for r > 0", r=r)
    return math.exp(-r * r)
