from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Tuple

import numpy as np
import sympy

from ..common.errors import ModuleMismatch, NotGammaForm
from ..common.rational import to_fraction, to_sympy
from ..repspace import LoweringModule, ladder_polynomial
from ..specialfn import pfq
from .families import CoherentState, annihilation_cs, ladder_series

logger = logging.getLogger(__name__)


def _same_module(x: LoweringModule | None, y: LoweringModule | None) -> bool:
    if x is None or y is None:
        return x is y
    if x.vacuum_weight != y.vacuum_weight or x.casimir != y.casimir:
        return False
    common = min(len(x.s), len(y.s))
    return x.s[:common] == y.s[:common]


def overlap(x: CoherentState, y: CoherentState) -> complex:
    """<x|y>, conjugate-linear in the first argument."""
    if not _same_module(x.module, y.module):
        raise ModuleMismatch("states live on different modules")
    size = max(x.cutoff, y.cutoff)
    left = np.zeros(size, dtype=complex)
    right = np.zeros(size, dtype=complex)
    left[: x.cutoff] = x.coeffs
    right[: y.cutoff] = y.coeffs
    return complex(np.sum(np.conj(left) * right))


def gamma_form(mod: LoweringModule) -> Tuple[Fraction, List[Fraction]]:
    """Write s(m) = lead * m * prod(m - r_i) and return (lead, [1 - r_i]).

    Then prod_{k<=n} s[k] = lead^n n! prod (1 - r_i)_n and the annihilation
    norm is a 0F_d series in |alpha|^2 / lead.
    """
    if mod.is_finite:
        raise NotGammaForm("terminated ladders have no Gamma-ratio form", dimension=mod.dimension)
    ladder = ladder_polynomial(mod)
    if len(ladder) < 2 or ladder[0] != 0:
        raise NotGammaForm("the ladder polynomial must vanish at m = 0 and be non-constant")
    m = sympy.Symbol("m")
    reduced = sympy.Poly(list(reversed([to_sympy(c) for c in ladder[1:]])), m, domain="QQ")
    lead = to_fraction(sympy.Rational(reduced.LC()))
    if lead <= 0:
        raise NotGammaForm("the ladder must grow, leading coefficient is not positive", lead=lead)
    parameters: List[Fraction] = []
    for root, multiplicity in sympy.roots(reduced, m).items():
        if not root.is_rational:
            raise NotGammaForm(f"ladder root {root} is not rational", root=root)
        parameters.extend([1 - to_fraction(sympy.Rational(root))] * multiplicity)
    if len(parameters) != reduced.degree():
        raise NotGammaForm("ladder polynomial does not split over the rationals")
    return lead, sorted(parameters)


def direct_norm(mod: LoweringModule, alpha: complex) -> float:
    """sum_n |alpha|^{2n} / prod_{k<=n} s[k] by summing the coefficients."""
    if mod.is_finite:
        return float(np.sum(np.abs(ladder_series(mod, alpha)) ** 2))
    return annihilation_cs(mod, alpha).raw_norm_sq


def norm_hypergeometric(mod: LoweringModule, alpha: complex, tol: float = 1e-16) -> float:
    """sum_n |alpha|^{2n} / prod_{k<=n} s[k] in closed form as 0F_d(; 1 - r_i; |alpha|^2 / lead).

    Ladders without a Gamma-ratio form fall back to ``direct_norm``.
    """
    try:
        lead, parameters = gamma_form(mod)
    except NotGammaForm as exc:
        logger.debug("summing the norm directly: %s", exc.message)
        return direct_norm(mod, alpha)
    z = abs(complex(alpha)) ** 2 / float(lead)
    result = pfq([], [float(p) for p in parameters], z, tol=tol)
    if not result.converged:
        logger.warning("0F%d series stopped with tail bound %.3g", len(parameters), result.bound)
    return float(result.value)


def overlap_hypergeometric(mod: LoweringModule, alpha: complex, beta: complex) -> float:
    """|<beta|alpha>|^2 = |0F_d(alpha beta*)|^2 / (0F_d(|alpha|^2) 0F_d(|beta|^2))."""
    lead, parameters = gamma_form(mod)
    b = [float(p) for p in parameters]
    cross = pfq([], b, complex(alpha) * np.conj(complex(beta)) / float(lead)).value
    return float(
        abs(cross) ** 2
        / (norm_hypergeometric(mod, alpha) * norm_hypergeometric(mod, beta))
    )
