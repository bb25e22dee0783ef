from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from ..algebra import StructurePolynomial, casimir_value, forward_difference, telescope_g, vacuum_weights
from ..common.errors import DomainError, LabError
from ..common.export import dumps, rows_to_csv, write_text
from ..common.graph_services import chain_statistics
from ..common.rational import format_fraction, to_fraction
from ..conjugate import (
    conjugate_raising,
    conjugate_residual,
    delta_for_vacuum,
    dual_vacua,
    epsilon_for_vacuum,
    map_residual,
    undeformed_map,
    undeformed_map_spec,
)
from ..measures import moment_sequence, moment_table, moment_table_csv
from ..realizations import (
    check_diagonal,
    closure_fit,
    conservation_check,
    find_vacua,
    oracle_fidelity,
    sector_chains,
    vacuum_report,
)
from ..repspace import build_module, commutator_residual, ladder_matrices, module_to_json, triple_to_csv
from ..states import CoherentState, Family, annihilation_cs, displacement_cs, exponential_cs, norm_hypergeometric
from .controller import JobConfig
from .presets import PresetBuild, PresetOptions, build_preset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Job:
    config: JobConfig
    build: PresetBuild

    @property
    def label(self) -> str:
        return self.config.algebra.preset or "custom"

    @property
    def b_sign(self) -> int:
        return self.config.b_sign if self.config.b_sign is not None else self.build.b_sign

    @property
    def epsilon_const(self) -> Fraction:
        """Configured eps, else the value that keeps the mapped commutator exact on the vacuum."""
        if self.config.epsilon_const is not None:
            return to_fraction(self.config.epsilon_const)
        return epsilon_for_vacuum(self.build.module.vacuum_weight, self.b_sign)


def prepare(config: JobConfig) -> Job:
    if config.algebra.preset is not None:
        options = PresetOptions(
            params=config.preset_params(),
            cutoff=config.cutoff.initial,
            mode_cutoff=config.sector.mode_cutoff,
            vacuum=config.vacuum,
        )
        return Job(config, build_preset(config.algebra.preset, options))
    f = StructurePolynomial(config.algebra.f or ())
    g = telescope_g(f)
    module = build_module(g, to_fraction(config.algebra.w0), config.cutoff.initial)
    return Job(config, PresetBuild(f, g, module))


def _write(out: str | None, name: str, text: str, written: List[str]) -> None:
    if out is None:
        return
    write_text(Path(out) / name, text)
    written.append(name)


def run_derive(job: Job) -> Dict[str, Any]:
    build = job.build
    weights = [to_fraction(w) for w in job.config.weights] or [build.module.vacuum_weight]
    return {
        "algebra": job.label,
        "f": build.f.to_json(),
        "g": build.g.to_json(),
        "degrees": {"f": build.f.degree, "g": build.g.degree},
        "telescopes": forward_difference(build.g.coeffs) == build.f,
        "casimir": [
            {"weight": format_fraction(w), "C": format_fraction(casimir_value(build.g, w))}
            for w in weights
        ],
        "notes": list(build.notes),
    }


def _map_report(job: Job) -> Dict[str, Any]:
    module = job.build.module
    report: Dict[str, Any] = {"b_sign": job.b_sign, "epsilon_const": job.epsilon_const}
    try:
        mapped = undeformed_map(module, job.b_sign, job.epsilon_const)
    except LabError as exc:
        return {**report, **exc.to_dict()}
    return {**report, "residual": map_residual(module, mapped, job.b_sign)}


def run_rep(job: Job) -> Dict[str, Any]:
    module = job.build.module
    triple = ladder_matrices(module)
    written: List[str] = []
    out = job.config.out
    _write(out, "module.json", dumps(module_to_json(module)), written)
    for which in ("n0", "nplus", "nminus"):
        _write(out, f"{which}.csv", triple_to_csv(triple, which), written)
    return {
        "algebra": job.label,
        "module": module_to_json(module),
        "dimension": module.dimension,
        "finite": module.is_finite,
        "commutator_residual": commutator_residual(triple, job.build.f),
        "undeformed_map": _map_report(job),
        "files": written,
    }


def _conjugate_report(job: Job) -> Dict[str, Any]:
    module = job.build.module
    delta = delta_for_vacuum(module.vacuum_weight)
    try:
        raising = conjugate_raising(module, delta)
    except LabError as exc:
        return {"delta": format_fraction(delta), **exc.to_dict()}
    vectors = dual_vacua(module, delta, raising)
    return {
        "delta": format_fraction(delta),
        "residual": conjugate_residual(module, raising),
        "dual_vacua": len(vectors),
        "vacuum_overlap": [float(abs(v[0])) for v in vectors],
    }


def run_vacua(job: Job) -> Dict[str, Any]:
    build = job.build
    w0 = build.module.vacuum_weight
    casimir = build.module.casimir
    if casimir is None:
        casimir = casimir_value(build.g, w0)
    candidates = []
    for entry in vacuum_weights(build.g, casimir):
        weight = entry["weight"]
        candidates.append(
            {
                "weight": weight,
                "exact": entry["exact"],
                "multiplicity": entry["multiplicity"],
                "delta": delta_for_vacuum(weight) if entry["exact"] else None,
            }
        )
    return {
        "algebra": job.label,
        "C": casimir,
        "vacuum_weight": w0,
        "candidates": candidates,
        "conjugate": _conjugate_report(job),
    }


def _coherent_state(job: Job, point: complex) -> CoherentState:
    config = job.config
    module = job.build.module
    tol, max_dim = config.tolerances.tail, config.cutoff.max_dim
    if config.family == "annihilation":
        return annihilation_cs(module, point, tol=tol, max_dim=max_dim)
    if config.family == "exponential":
        return exponential_cs(module, point, tol=tol, max_dim=max_dim)
    spec = undeformed_map_spec(module, job.b_sign, job.epsilon_const)
    return displacement_cs(module, spec, point, tol=tol, max_dim=max_dim)


def _coefficient_rows(state: CoherentState) -> List[Tuple[Any, ...]]:
    nonzero = np.nonzero(state.coeffs)[0]
    last = int(nonzero[-1]) if nonzero.size else 0
    return [
        (n, float(c.real), float(c.imag), float(abs(c) ** 2))
        for n, c in enumerate(state.coeffs[: last + 1])
    ]


def _finite_or_none(value: float | None) -> float | None:
    if value is None or not np.isfinite(value):
        return None
    return float(value)


def _series_norm(state: CoherentState) -> float | None:
    """Norm of the raw annihilation series from its 0F_d form, or summed directly."""
    if state.family != Family.ANNIHILATION or state.module is None:
        return None
    try:
        return _finite_or_none(norm_hypergeometric(state.module, state.parameter))
    except LabError as exc:
        logger.debug("no series norm at %s: %s", state.parameter, exc.message)
        return None


def run_cs(job: Job) -> Dict[str, Any]:
    """One coefficient table per grid point; results keep grid order whatever the worker count."""
    config = job.config
    points = config.points
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        states = list(pool.map(lambda p: _coherent_state(job, p), points))

    written: List[str] = []
    summary = []
    for index, (point, state) in enumerate(zip(points, states)):
        name = f"cs_{index:03d}.csv"
        rows = _coefficient_rows(state)
        _write(config.out, name, rows_to_csv(["n", "re", "im", "probability"], rows), written)
        summary.append(
            {
                "index": index,
                "parameter": [point.real, point.imag],
                "levels": len(rows),
                "cutoff": state.cutoff,
                "norm_sq": state.norm_sq,
                "raw_norm_sq": _finite_or_none(state.raw_norm_sq),
                "series_norm_sq": _series_norm(state),
                "tail_bound": _finite_or_none(state.tail_bound),
                "normalizable": state.normalizable,
                "eigen_residual": state.eigen_residual,
                "unitary": state.unitary,
            }
        )
    report = {"algebra": job.label, "family": config.family, "points": summary}
    _write(config.out, "summary.json", dumps(report), written)
    report["files"] = written
    return report


def run_moments(job: Job) -> Dict[str, Any]:
    config = job.config
    moments = moment_sequence(job.build.module, config.n_max)
    rows = moment_table(moments, job.build.density, quad_tol=config.tolerances.quad)
    written: List[str] = []
    _write(config.out, "moments.csv", moment_table_csv(rows), written)
    errors = [row[4] for row in rows if row[4] != ""]
    return {
        "algebra": job.label,
        "density": job.build.density is not None,
        "rows": [list(row) for row in rows],
        "max_relative_error": max(errors) if errors else None,
        "notes": list(job.build.notes),
        "files": written,
    }


def run_realization_check(job: Job) -> Dict[str, Any]:
    build = job.build
    if build.realization is None:
        raise DomainError(f"preset {job.label} has no Fock realization", preset=job.label)
    triple = build.realization()
    fitted = closure_fit(triple)
    realized = find_vacua(triple)
    if job.config.vacuum >= len(realized):
        raise DomainError(
            f"vacuum {job.config.vacuum} out of range; the sector has {len(realized)}",
            vacua=len(realized),
        )
    vacuum = realized[job.config.vacuum].index
    report = vacuum_report(triple, fitted)
    oracle = [
        {"parameter": [p.real, p.imag], "fidelity": oracle_fidelity(triple, vacuum, p, fitted)}
        for p in job.config.points
    ]
    return {
        "algebra": job.label,
        "realization": triple.name,
        "sector": {k: format_fraction(v) for k, v in sorted(triple.sector.charges.items())},
        "size": triple.size,
        "conservation": conservation_check(triple),
        "off_diagonal": check_diagonal(triple),
        "closure": fitted.to_json(),
        "expected": None if build.realization_f is None else build.realization_f.to_json(),
        "matches": build.realization_f is None or fitted == build.realization_f,
        "chains": chain_statistics(sector_chains(triple)),
        "vacua": [
            {"index": v.index, "state": list(v.state), "weight": v.weight} for v in report["realized"]
        ],
        "algebraic_vacua": report["algebraic"],
        "oracle": oracle,
    }


RUNNERS = {
    "derive": run_derive,
    "rep": run_rep,
    "vacua": run_vacua,
    "cs": run_cs,
    "moments": run_moments,
    "realization-check": run_realization_check,
}


def run_job(command: str, config: JobConfig) -> Dict[str, Any]:
    if command not in RUNNERS:
        raise KeyError(f"unknown command {command!r}; expected one of {sorted(RUNNERS)}")
    job = prepare(config)
    logger.debug("running %s on %s", command, job.label)
    return RUNNERS[command](job)

