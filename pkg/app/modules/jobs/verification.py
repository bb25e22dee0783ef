"""Named invariant suite run by ``lab verify``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from ..algebra import CasimirPolynomial, forward_difference
from ..common.errors import ConfigError, LabError, PoleOnSpectrum
from ..conjugate import (
    conjugate_raising,
    conjugate_residual,
    delta_for_vacuum,
    undeformed_map,
)
from ..measures import moment_sequence, verify_moments
from ..realizations import closure_fit, conservation_check, find_vacua, oracle_fidelity
from ..registry import list_presets
from ..repspace import commutator, commutator_residual, interior_residual, ladder_matrices
from ..states import annihilation_cs
from .controller import AlgebraSpec, JobConfig
from .runners import Job, prepare

logger = logging.getLogger(__name__)

MOMENT_TOL = 1e-6
NORM_TOL = 1e-12
FIDELITY_TOL = 1e-12
MOMENT_LEVELS = 8
ORACLE_ALPHA = 0.5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float | None = None
    limit: float | None = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "limit": self.limit,
            "detail": self.detail,
        }


def _corrupt_ladder(job: Job) -> Job:
    module = job.build.module
    if module.dimension <= 2:
        return job
    s = list(module.s)
    s[2] += 1
    return replace(job, build=replace(job.build, module=replace(module, s=tuple(s))))


def _corrupt_casimir(job: Job) -> Job:
    coeffs = list(job.build.g.coeffs) + [Fraction(0)] * 2
    coeffs[1] += 1
    return replace(job, build=replace(job.build, g=CasimirPolynomial(coeffs)))


CORRUPTIONS: Dict[str, Callable[[Job], Job]] = {
    "ladder": _corrupt_ladder,
    "casimir": _corrupt_casimir,
}


def _bounded(name: str, value: float, limit: float) -> CheckResult:
    return CheckResult(name, bool(value <= limit), float(value), limit)


def _telescope(job: Job, tol: float) -> CheckResult:
    exact = forward_difference(job.build.g.coeffs) == job.build.f
    return CheckResult("telescope", exact, detail="g(H) - g(H-1) == f(H) exactly")


def _commutator(job: Job, tol: float) -> CheckResult:
    triple = ladder_matrices(job.build.module)
    return _bounded("commutator", commutator_residual(triple, job.build.f), tol)


def _conjugate(job: Job, tol: float) -> CheckResult:
    module = job.build.module
    delta = delta_for_vacuum(module.vacuum_weight)
    try:
        raising = conjugate_raising(module, delta)
    except PoleOnSpectrum:
        passed = module.is_finite
        return CheckResult("conjugate", passed, detail="no canonical conjugate on a finite module")
    return _bounded("conjugate", conjugate_residual(module, raising), tol)


def _undeformed_map(job: Job, tol: float) -> CheckResult:
    module = job.build.module
    mapped = undeformed_map(module, job.b_sign, job.epsilon_const)
    triple = ladder_matrices(module)
    residual = commutator(triple.nplus, mapped) + 2 * job.b_sign * triple.n0
    # the top row of a terminated module closes only for weight-symmetric modules
    levels = triple.size - 1 if module.is_finite else triple.interior
    return _bounded("undeformed_map", interior_residual(residual, levels), tol)


def _annihilation(job: Job, tol: float) -> CheckResult | None:
    module = job.build.module
    if module.is_finite:
        return None
    state = annihilation_cs(module, 1.0, tol=job.config.tolerances.tail, max_dim=job.config.cutoff.max_dim)
    residual = state.eigen_residual or 0.0
    passed = residual <= tol and abs(state.norm_sq - 1.0) <= NORM_TOL
    return CheckResult("annihilation", passed, residual, tol, detail=f"norm^2 = {state.norm_sq:.17g}")


def _moments(job: Job, tol: float) -> CheckResult | None:
    if job.build.density is None:
        return None
    n_max = min(job.config.n_max, MOMENT_LEVELS)
    moments = moment_sequence(job.build.module, n_max)
    error = verify_moments(job.build.density, moments, quad_tol=job.config.tolerances.quad)
    return _bounded("moments", error, MOMENT_TOL)


def _realization(job: Job, tol: float) -> CheckResult | None:
    if job.build.realization is None:
        return None
    triple = job.build.realization()
    conservation = conservation_check(triple)
    if not (conservation["conserved"] and conservation["raising_shift"]):
        return CheckResult("realization", False, detail="sector charges are not conserved")
    fitted = closure_fit(triple)
    if job.build.realization_f is not None and fitted != job.build.realization_f:
        return CheckResult("realization", False, detail=f"closure gave f = {fitted.to_json()}")
    vacua = find_vacua(triple)
    if not vacua:
        return CheckResult("realization", False, detail="no realized vacuum")
    fidelity = oracle_fidelity(triple, vacua[0].index, ORACLE_ALPHA, fitted)
    return _bounded("realization", 1.0 - fidelity, FIDELITY_TOL)


CHECKS: Tuple[Callable[[Job, float], CheckResult | None], ...] = (
    _telescope,
    _commutator,
    _conjugate,
    _undeformed_map,
    _annihilation,
    _moments,
    _realization,
)


def _run_checks(job: Job) -> List[CheckResult]:
    tol = job.config.tolerances.residual
    results = []
    for check in CHECKS:
        name = check.__name__.lstrip("_")
        try:
            result = check(job, tol)
        except LabError as exc:
            result = CheckResult(name, False, detail=f"{exc.code}: {exc.message}")
        if result is None:
            continue
        results.append(replace(result, name=f"{job.label}.{result.name}"))
    return results


def suite_configs(config: JobConfig | None) -> List[JobConfig]:
    if config is not None:
        return [config]
    return [JobConfig(algebra=AlgebraSpec(preset=preset.slug)) for preset in list_presets()]


def run_verify(config: JobConfig | None = None, corruption: str | None = None) -> Dict[str, Any]:
    """Run every check on one configured algebra, or on all shipped presets."""
    corruption = corruption or (config.inject_corruption if config is not None else None)
    if corruption is not None and corruption not in CORRUPTIONS:
        raise ConfigError(
            f"unknown corruption {corruption!r}",
            {"inject_corruption": f"expected one of {', '.join(sorted(CORRUPTIONS))}"},
        )
    results: List[CheckResult] = []
    for cfg in suite_configs(config):
        job = prepare(cfg)
        if corruption is not None:
            job = CORRUPTIONS[corruption](job)
        results.extend(_run_checks(job))
    failed = [r.name for r in results if not r.passed]
    for name in failed:
        logger.warning("invariant %s failed", name)
    return {
        "passed": not failed,
        "failed": failed,
        "checks": [r.to_dict() for r in results],
        "corruption": corruption,
    }
