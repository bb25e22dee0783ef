from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from scipy import linalg, special

from ..common.errors import CutoffExceeded, PoleOnSpectrum
from ..common.export import rows_to_csv
from ..common.rational import RationalLike, horner
from ..conjugate import UndeformedMapSpec, mapped_lowering, undeformed_map_spec
from ..repspace import LoweringModule, extend_module, ladder_matrices, ladder_polynomial

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-14
DEFAULT_MAX_DIM = 4096


class Family(str, Enum):
    ANNIHILATION = "annihilation"
    EXPONENTIAL = "exponential"
    DISPLACEMENT = "displacement"


@dataclass(frozen=True)
class CoherentState:
    family: Family
    parameter: complex
    coeffs: np.ndarray
    norm_sq: float
    raw_norm_sq: float
    tail_bound: float
    normalizable: bool
    eigen_residual: float | None = None
    unitary: bool | None = None
    module: LoweringModule | None = field(default=None, compare=False, repr=False)

    @property
    def cutoff(self) -> int:
        return int(self.coeffs.shape[0])


def _log_products(mod: LoweringModule) -> np.ndarray:
    """log prod_{k<=n} s[k] for n over the occupied levels."""
    logs = np.zeros(mod.dimension)
    if mod.dimension > 1:
        logs[1:] = np.cumsum(np.log(mod.s_array()[1:]))
    return logs


def _vacuum_terms(size: int) -> np.ndarray:
    log_terms = np.full(size, -np.inf)
    log_terms[0] = 0.0
    return log_terms


def ladder_series(mod: LoweringModule, alpha: complex) -> np.ndarray:
    """Raw annihilation series alpha^n / sqrt(prod s[k]), defined on finite modules too."""
    alpha = complex(alpha)
    if alpha == 0:
        coeffs = np.zeros(mod.dimension, dtype=complex)
        coeffs[0] = 1.0
        return coeffs
    n = np.arange(mod.dimension)
    log_abs = n * np.log(abs(alpha)) - 0.5 * _log_products(mod)
    return np.exp(log_abs) * np.exp(1j * n * np.angle(alpha))


def _next_s(mod: LoweringModule) -> float:
    if mod.ladder is not None:
        return float(horner(mod.ladder, mod.cutoff))
    return float(mod.s[-1])


def _grow(
    mod: LoweringModule,
    build: Callable[[LoweringModule], Tuple[np.ndarray, float]],
    tol: float,
    max_dim: int,
) -> Tuple[LoweringModule, np.ndarray, float]:
    """Double the cutoff until ``build`` certifies the tail mass below tol."""
    current = mod
    while True:
        log_terms, tail = build(current)
        if tail <= tol:
            return current, log_terms, tail
        if not current.is_extendable or current.cutoff >= max_dim:
            raise CutoffExceeded(
                f"tail bound {tail:.3g} above {tol:g} at cutoff {current.cutoff}",
                cutoff=current.cutoff,
                max_dim=max_dim,
                tail=tail,
            )
        larger = min(2 * current.cutoff, max_dim)
        logger.debug("growing cutoff %d -> %d (tail %.3g)", current.cutoff, larger, tail)
        current = extend_module(current, larger)


def _geometric_tail(log_terms: np.ndarray, ratio: float) -> float:
    """Bound on the discarded mass relative to the kept mass."""
    if ratio >= 1.0:
        return float("inf")
    peak = float(np.max(log_terms))
    kept = float(np.sum(np.exp(log_terms - peak)))
    last = float(np.exp(log_terms[-1] - peak))
    return last * ratio / (1.0 - ratio) / kept


def _finish(
    family: Family,
    parameter: complex,
    mod: LoweringModule,
    log_terms: np.ndarray,
    tail: float,
    normalizable: bool,
) -> CoherentState:
    log_abs = 0.5 * log_terms
    scale = float(np.max(log_abs))
    n = np.arange(log_abs.shape[0])
    if parameter == 0:
        phase = (n == 0).astype(complex)
    else:
        phase = np.exp(1j * n * np.angle(parameter))
    amplitudes = np.exp(log_abs - scale) * phase
    kept = float(np.sum(np.abs(amplitudes) ** 2))
    raw_norm_sq = float(np.exp(2 * scale) * kept)
    if normalizable:
        coeffs = amplitudes / np.sqrt(kept)
    else:
        coeffs = amplitudes * np.exp(scale)
    return CoherentState(
        family=family,
        parameter=complex(parameter),
        coeffs=coeffs,
        norm_sq=float(np.sum(np.abs(coeffs) ** 2)),
        raw_norm_sq=raw_norm_sq,
        tail_bound=tail,
        normalizable=normalizable,
        module=mod,
    )


def eigen_residual(mod: LoweringModule, coeffs: np.ndarray, alpha: complex) -> float:
    """||N-|c> - alpha|c>|| over the levels below the truncation edge."""
    size = coeffs.shape[0]
    diff = -alpha * coeffs
    diff[: size - 1] += np.sqrt(mod.s_array()[1:size]) * coeffs[1:]
    interior = size if mod.is_finite else size - 1
    return float(np.linalg.norm(diff[:interior]))


def annihilation_cs(
    mod: LoweringModule,
    alpha: complex,
    tol: float = DEFAULT_TOL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> CoherentState:
    """Eigenstate of N- with c_n = alpha^n / sqrt(prod_{k<=n} s[k])."""
    if mod.is_finite:
        raise PoleOnSpectrum(
            "no canonical conjugate on finite module",
            level=mod.dimension - 1,
            dimension=mod.dimension,
        )
    alpha = complex(alpha)

    def build(current: LoweringModule) -> Tuple[np.ndarray, float]:
        if alpha == 0:
            return _vacuum_terms(current.dimension), 0.0
        n = np.arange(current.dimension)
        log_terms = 2 * n * np.log(abs(alpha)) - _log_products(current)
        s_next = min(_next_s(current), float(current.s[-1]))
        ratio = abs(alpha) ** 2 / s_next if s_next > 0 else float("inf")
        return log_terms, _geometric_tail(log_terms, ratio)

    grown, log_terms, tail = _grow(mod, build, tol, max_dim)
    state = _finish(Family.ANNIHILATION, alpha, grown, log_terms, tail, True)
    return replace(state, eigen_residual=eigen_residual(grown, state.coeffs, alpha))


def exponential_limit_ratio(mod: LoweringModule, gamma: complex) -> float:
    """lim |c_{n+1}/c_n|^2 = lim |gamma|^2 s[n+1] / (n+1)^2."""
    if gamma == 0:
        return 0.0
    ladder = ladder_polynomial(mod)
    degree = len(ladder) - 1
    if degree < 2:
        return 0.0
    if degree == 2:
        return abs(gamma) ** 2 * float(ladder[2])
    return float("inf")


def exponential_cs(
    mod: LoweringModule,
    gamma: complex,
    tol: float = DEFAULT_TOL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> CoherentState:
    """e^{gamma N+}|vacuum>: c_n = gamma^n / n! * sqrt(prod_{k<=n} s[k]).

    Divergent series are returned unnormalized at the module's own cutoff
    with ``normalizable`` False; a limit ratio of exactly 1 counts as
    divergent.
    """
    gamma = complex(gamma)
    limit = 0.0 if mod.is_finite else exponential_limit_ratio(mod, gamma)

    def terms(current: LoweringModule) -> np.ndarray:
        if gamma == 0:
            return _vacuum_terms(current.dimension)
        n = np.arange(current.dimension)
        return 2 * n * np.log(abs(gamma)) - 2 * special.gammaln(n + 1) + _log_products(current)

    if limit >= 1.0:
        logger.debug("exponential series diverges: limit ratio %.3g", limit)
        return _finish(Family.EXPONENTIAL, gamma, mod, terms(mod), float("inf"), False)

    def build(current: LoweringModule) -> Tuple[np.ndarray, float]:
        log_terms = terms(current)
        if gamma == 0 or current.is_finite:
            return log_terms, 0.0
        D = current.cutoff
        ratio = max(abs(gamma) ** 2 * _next_s(current) / D**2, limit)
        return log_terms, _geometric_tail(log_terms, ratio)

    grown, log_terms, tail = _grow(mod, build, tol, max_dim)
    return _finish(Family.EXPONENTIAL, gamma, grown, log_terms, tail, True)


def _displaced_vacuum(
    mod: LoweringModule, map_spec: UndeformedMapSpec, eta: complex
) -> Tuple[np.ndarray, bool]:
    triple = ladder_matrices(mod)
    nbar = mapped_lowering(mod, map_spec)
    unitary = bool(np.allclose(nbar, triple.nplus.T, rtol=1e-12, atol=1e-12))
    generator = eta * triple.nplus - np.conj(eta) * nbar
    vacuum = np.zeros(triple.size, dtype=complex)
    vacuum[0] = 1.0
    return linalg.expm(generator.astype(complex)) @ vacuum, unitary


def displacement_cs(
    mod: LoweringModule,
    map_spec: UndeformedMapSpec,
    eta: complex,
    D: int | None = None,
    tol: float = DEFAULT_TOL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> CoherentState:
    """exp(eta N+ - eta* N-bar)|vacuum> by scaling-and-squaring on the truncated space.

    Without an explicit ``D`` a unitary generator doubles the cutoff until the
    probability on the top level is below ``tol``. A non-unitary generator
    has no cutoff-independent norm and is evaluated at the module's cutoff.
    """
    if D is not None and D != mod.cutoff and not mod.is_finite:
        mod = extend_module(mod, D)
        map_spec = undeformed_map_spec(mod, map_spec.b_sign, map_spec.epsilon_const)
    eta = complex(eta)
    vector, unitary = _displaced_vacuum(mod, map_spec, eta)
    if not unitary:
        logger.warning(
            "displacement generator is not anti-Hermitian (b=%d, eps=%s)",
            map_spec.b_sign,
            map_spec.epsilon_const,
        )
    elif D is None and not mod.is_finite:

        def build(current: LoweringModule) -> Tuple[np.ndarray, float]:
            spec = undeformed_map_spec(current, map_spec.b_sign, map_spec.epsilon_const)
            evolved = vector if current is mod else _displaced_vacuum(current, spec, eta)[0]
            top = float(np.abs(evolved[-1]) ** 2 / np.sum(np.abs(evolved) ** 2))
            return evolved, top

        mod, vector, _ = _grow(mod, build, tol, max_dim)
    raw_norm_sq = float(np.sum(np.abs(vector) ** 2))
    coeffs = vector / np.sqrt(raw_norm_sq)
    if abs(coeffs[0]) > 0:
        coeffs = coeffs * (abs(coeffs[0]) / coeffs[0])
    return CoherentState(
        family=Family.DISPLACEMENT,
        parameter=eta,
        coeffs=coeffs,
        norm_sq=float(np.sum(np.abs(coeffs) ** 2)),
        raw_norm_sq=raw_norm_sq,
        tail_bound=0.0 if mod.is_finite else float(np.abs(coeffs[-1]) ** 2),
        normalizable=True,
        unitary=unitary,
        module=mod,
    )


def displacement_norm_profile(
    mod: LoweringModule,
    b_sign: int,
    epsilon_const: RationalLike,
    eta: complex,
    cutoffs: List[int],
) -> List[Tuple[int, float]]:
    """||exp(eta N+ - eta* N-bar)|vacuum>||^2 as the cutoff grows."""
    profile = []
    for D in cutoffs:
        current = extend_module(mod, D)
        spec = undeformed_map_spec(current, b_sign, epsilon_const)
        profile.append((D, displacement_cs(current, spec, eta, D=D).raw_norm_sq))
    return profile


def photon_statistics(state: CoherentState) -> List[Tuple[int, float]]:
    probabilities = np.abs(state.coeffs) ** 2
    return [(n, float(p)) for n, p in enumerate(probabilities)]


def state_to_json(state: CoherentState) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "family": state.family.value,
        "parameter": [state.parameter.real, state.parameter.imag],
        "coeffs": [[float(c.real), float(c.imag)] for c in state.coeffs],
        "norm_sq": state.norm_sq,
        "raw_norm_sq": state.raw_norm_sq if np.isfinite(state.raw_norm_sq) else None,
        "tail_bound": state.tail_bound if np.isfinite(state.tail_bound) else None,
        "normalizable": state.normalizable,
    }
    if state.eigen_residual is not None:
        payload["eigen_residual"] = state.eigen_residual
    if state.unitary is not None:
        payload["unitary"] = state.unitary
    return payload


def state_to_csv(state: CoherentState) -> str:
    return rows_to_csv(["level", "probability"], photon_statistics(state))
