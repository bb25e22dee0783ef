from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np
from scipy import linalg

from ..common.errors import DomainError, PoleOnSpectrum
from ..common.export import format_float
from ..common.rational import RationalLike, format_fraction, to_fraction
from ..repspace import LoweringModule, commutator, interior_residual, ladder_matrices

logger = logging.getLogger(__name__)

DEFAULT_KERNEL_TOL = 1e-10


@dataclass(frozen=True)
class ConjugateSpec:
    """F(C, N0) = (N0 + delta) / (C - g(N0)) sampled on the basis levels."""

    delta: Fraction
    F_diag: np.ndarray
    pole_levels: List[int]

    def to_json(self) -> Dict[str, Any]:
        return {
            "delta": format_fraction(self.delta),
            "F_diag": [format_float(v) for v in self.F_diag],
            "pole_levels": list(self.pole_levels),
        }


@dataclass(frozen=True)
class UndeformedMapSpec:
    """G(C, N0) = (b (N0^2 - N0) + eps) / (C - g(N0 - 1)) on levels 1..dim-1."""

    b_sign: int
    epsilon_const: Fraction
    G_diag: np.ndarray


def delta_for_vacuum(w0: RationalLike) -> Fraction:
    """The shift with (N0 + delta)|vacuum> = |vacuum>."""
    return 1 - to_fraction(w0)


def epsilon_for_vacuum(w0: RationalLike, b_sign: int) -> Fraction:
    """eps that makes [N+, N-bar] = -2b N0 hold on the vacuum row as well."""
    w0 = to_fraction(w0)
    return b_sign * w0 * (1 - w0)


def conjugate_spec(mod: LoweringModule, delta: RationalLike) -> ConjugateSpec:
    delta = to_fraction(delta)
    levels = mod.dimension - 1 if not mod.is_finite else mod.dimension
    F_diag = np.zeros(levels)
    poles: List[int] = []
    for m in range(levels):
        # C - g(w0 + m) is s[m+1]
        denominator = mod.s[m + 1]
        if denominator == 0:
            poles.append(m)
            F_diag[m] = np.inf
            continue
        F_diag[m] = float((mod.vacuum_weight + m + delta) / denominator)
    return ConjugateSpec(delta=delta, F_diag=F_diag, pole_levels=poles)


def conjugate_raising(mod: LoweringModule, delta: RationalLike) -> np.ndarray:
    """N+~ = N+ F(C, N0), whose commutator with N- is the identity."""
    spec = conjugate_spec(mod, delta)
    if spec.pole_levels:
        level = spec.pole_levels[0]
        raise PoleOnSpectrum(
            f"no canonical conjugate on finite module: C - g(N0) vanishes at level {level}",
            level=level,
            dimension=mod.dimension,
        )
    dim = mod.dimension
    matrix = np.zeros((dim, dim))
    for m in range(dim - 1):
        matrix[m + 1, m] = float(mod.vacuum_weight + m + spec.delta) / np.sqrt(float(mod.s[m + 1]))
    return matrix


def conjugate_residual(mod: LoweringModule, raising: np.ndarray) -> float:
    """max |[N-, N+~] - 1| on interior levels."""
    triple = ladder_matrices(mod)
    residual = commutator(triple.nminus, raising) - np.eye(triple.size)
    return interior_residual(residual, triple.interior)


def dual_vacua(
    mod: LoweringModule,
    delta: RationalLike,
    matrix: np.ndarray | None = None,
    tol: float = DEFAULT_KERNEL_TOL,
) -> List[np.ndarray]:
    """Kernel of the adjoint of N+~, by SVD with a relative singular-value cut."""
    raising = conjugate_raising(mod, delta) if matrix is None else matrix
    kernel = linalg.null_space(raising.conj().T, rcond=tol)
    vectors = []
    for column in kernel.T:
        pivot = int(np.argmax(np.abs(column)))
        phase = column[pivot] / abs(column[pivot])
        vectors.append(column / phase)
    return vectors


def undeformed_map_spec(
    mod: LoweringModule, b_sign: int, epsilon_const: RationalLike = 0
) -> UndeformedMapSpec:
    if b_sign not in (1, -1):
        raise DomainError("b must be +1 (non-compact) or -1 (compact)", b=b_sign)
    eps = to_fraction(epsilon_const)
    G_diag = np.zeros(mod.dimension)
    for m in range(1, mod.dimension):
        x = mod.vacuum_weight + m
        if mod.s[m] == 0:
            raise PoleOnSpectrum(f"C - g(N0 - 1) vanishes at occupied level {m}", level=m)
        G_diag[m] = float((b_sign * (x * x - x) + eps) / mod.s[m])
    return UndeformedMapSpec(b_sign=b_sign, epsilon_const=eps, G_diag=G_diag)


def mapped_lowering(mod: LoweringModule, spec: UndeformedMapSpec) -> np.ndarray:
    dim = mod.dimension
    matrix = np.zeros((dim, dim))
    for m in range(1, dim):
        matrix[m - 1, m] = np.sqrt(float(mod.s[m])) * spec.G_diag[m]
    return matrix


def undeformed_map(mod: LoweringModule, b_sign: int, epsilon_const: RationalLike = 0) -> np.ndarray:
    """N-bar = N- G(C, N0) with [N+, N-bar] = -2b N0."""
    return mapped_lowering(mod, undeformed_map_spec(mod, b_sign, epsilon_const))


def map_residual(mod: LoweringModule, mapped: np.ndarray, b_sign: int) -> float:
    """max |[N+, N-bar] + 2b N0| on interior levels."""
    triple = ladder_matrices(mod)
    residual = commutator(triple.nplus, mapped) + 2 * b_sign * triple.n0
    return interior_residual(residual, triple.interior)
