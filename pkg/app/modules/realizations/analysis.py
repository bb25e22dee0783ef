from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import numpy as np

from ..algebra import (
    DEFAULT_MAX_DEGREE,
    CasimirPolynomial,
    StructurePolynomial,
    casimir_value,
    interpolate_exact,
    telescope_g,
    vacuum_weights,
)
from ..common.errors import NoPolynomialFit, NotDiagonal, OrbitLeavesCutoff
from ..common.graph_services import build_ladder_graph, follow_orbit, get_chains
from ..common.rational import format_fraction
from ..conjugate import delta_for_vacuum
from ..repspace import LoweringModule, module_from_ladder
from ..states import annihilation_cs, ladder_series
from .sector import RealizedTriple, State

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-9


@dataclass(frozen=True)
class Vacuum:
    index: int
    state: State
    weight: Fraction


def commutator_diagonal(t: RealizedTriple) -> List[Fraction]:
    """Exact diagonal of [N+, N-] = N+N- - N-N+ on every sector state."""
    return [t.in_s[k] - t.out_s[k] for k in range(t.size)]


def casimir_diagonal(t: RealizedTriple, g: CasimirPolynomial) -> List[Fraction]:
    """C = N-N+ + g(N0) on every sector state."""
    return [t.out_s[k] + g(t.n0[k]) for k in range(t.size)]


def check_diagonal(t: RealizedTriple, nplus: np.ndarray | None = None) -> float:
    """Largest off-diagonal entry of [N+, N-]; raises NotDiagonal above tolerance."""
    raising = t.nplus_dense() if nplus is None else nplus
    comm = raising @ raising.T - raising.T @ raising
    off = comm - np.diag(np.diag(comm))
    worst = float(np.max(np.abs(off))) if off.size else 0.0
    if worst > OFF_DIAGONAL_TOL:
        row, col = np.unravel_index(int(np.argmax(np.abs(off))), off.shape)
        raise NotDiagonal(
            f"[N+, N-] has an off-diagonal entry {worst:.3g} at ({row}, {col})",
            row=int(row),
            col=int(col),
            value=worst,
        )
    return worst


def closure_fit(
    t: RealizedTriple,
    max_degree: int = DEFAULT_MAX_DEGREE,
    nplus: np.ndarray | None = None,
) -> StructurePolynomial:
    """Exact f with diag [N+, N-] = f(N0) over the interior sector states."""
    check_diagonal(t, nplus)
    diagonal = commutator_diagonal(t)
    points: Dict[Fraction, Fraction] = {}
    for k in range(t.size):
        if k in t.boundary:
            continue
        x, y = t.n0[k], diagonal[k]
        if x in points and points[x] != y:
            raise NoPolynomialFit(
                f"two states share N0 = {format_fraction(x)} but differ in [N+, N-]",
                weight=format_fraction(x),
            )
        points[x] = y
    if not points:
        raise NoPolynomialFit("no interior sector states to fit", sector=t.sector.charges)
    xs = sorted(points)
    coeffs = interpolate_exact(xs, [points[x] for x in xs])
    f = StructurePolynomial(coeffs)
    if f.degree > max_degree:
        raise NoPolynomialFit(
            f"fitted degree {f.degree} exceeds {max_degree}",
            degree=f.degree,
            limit=max_degree,
        )
    logger.debug("%s sector %s closes with degree %d", t.name, t.sector.charges, f.degree)
    return f


def find_vacua(t: RealizedTriple) -> List[Vacuum]:
    """Sector states annihilated by N-.

    N- sends distinct basis states to distinct states, so its kernel is
    spanned by the basis states with zero N- amplitude.
    """
    return [
        Vacuum(index=k, state=t.sector.basis[k], weight=t.n0[k])
        for k in range(t.size)
        if t.in_s[k] == 0
    ]


def sector_chains(t: RealizedTriple) -> List[List[int]]:
    """Decompose the sector into N+ orbits, each from its lowest state upward."""
    return get_chains(build_ladder_graph(t.size, t.edges()))


def orbit(t: RealizedTriple, vacuum: int) -> List[int]:
    return follow_orbit(build_ladder_graph(t.size, t.edges()), vacuum)


def sector_to_module(
    t: RealizedTriple,
    vacuum: int,
    f: StructurePolynomial | None = None,
    min_levels: int = 2,
) -> LoweringModule:
    """Read the ladder off the N+ orbit of ``vacuum``.

    An orbit cut by the mode cutoffs gives a truncated module; one that
    ends inside the sector gives a terminated module.
    """
    path = orbit(t, vacuum)
    table = [Fraction(0)] + [t.out_s[k] for k in path[:-1]]
    last = path[-1]
    if t.out_s[last] == 0:
        table.append(Fraction(0))
    elif len(path) < min_levels:
        raise OrbitLeavesCutoff(
            f"the N+ orbit of state {vacuum} leaves the cutoff after {len(path)} levels",
            vacuum=vacuum,
            levels=len(path),
        )
    casimir = None
    if f is not None:
        casimir = casimir_value(telescope_g(f), t.n0[vacuum])
    return module_from_ladder(table, t.n0[vacuum], casimir)


def _log_fraction(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def sector_series(
    t: RealizedTriple,
    vacuum: int,
    alpha: complex,
    f: StructurePolynomial,
) -> np.ndarray:
    """sum_n alpha^n/n! (N+ F)^n |vacuum> in the Fock sector, F = (N0 + delta)/(C - g(N0))."""
    g = telescope_g(f)
    w0 = t.n0[vacuum]
    casimir = casimir_value(g, w0)
    delta = delta_for_vacuum(w0)
    alpha = complex(alpha)
    coeffs = np.zeros(t.size, dtype=complex)
    coeffs[vacuum] = 1.0
    if alpha == 0:
        return coeffs
    targets = {col: row for row, col in t.nplus}
    current = vacuum
    log_sq = 0.0
    n = 0
    while current in targets:
        x = t.n0[current]
        denominator = casimir - g(x)
        if denominator == 0:
            break
        factor_sq = ((x + delta) / denominator) ** 2 * t.out_s[current]
        if factor_sq == 0:
            break
        log_sq += _log_fraction(factor_sq)
        n += 1
        current = targets[current]
        log_abs = n * math.log(abs(alpha)) - math.lgamma(n + 1) + 0.5 * log_sq
        coeffs[current] = math.exp(log_abs) * np.exp(1j * n * np.angle(alpha))
    return coeffs


def _normalized(vector: np.ndarray) -> np.ndarray:
    return vector / np.linalg.norm(vector)


def oracle_fidelity(
    t: RealizedTriple,
    vacuum: int,
    alpha: complex,
    f: StructurePolynomial,
    tol: float = 1e-12,
) -> float:
    """|<module state|sector state>|^2 for the annihilation series built both ways."""
    module = sector_to_module(t, vacuum, f)
    path = orbit(t, vacuum)[: module.dimension]
    if module.is_finite:
        via_module = _normalized(ladder_series(module, alpha))
    else:
        via_module = annihilation_cs(module, alpha, tol=tol).coeffs
    embedded = np.zeros(t.size, dtype=complex)
    embedded[path] = via_module[: len(path)]
    direct = _normalized(sector_series(t, vacuum, alpha, f))
    return float(abs(np.vdot(embedded, direct)) ** 2)


def conservation_check(t: RealizedTriple) -> Dict[str, Any]:
    """Charges commute with the generators and [N0, N+] = N+, exactly."""
    basis = t.sector.basis
    charge_violations = [
        (col, row)
        for (row, col) in t.nplus
        if t.charge_fn(basis[row]) != t.charge_fn(basis[col])
    ]
    shift_violations = [(col, row) for (row, col) in t.nplus if t.n0[row] - t.n0[col] != 1]
    in_sector = all(t.charge_fn(state) == t.sector.charges for state in basis)
    return {
        "conserved": not charge_violations and not t.leaks and in_sector,
        "raising_shift": not shift_violations,
        "charge_violations": charge_violations,
        "leaks": [col for col, _ in t.leaks],
        "shift_violations": shift_violations,
    }


def vacuum_report(t: RealizedTriple, f: StructurePolynomial) -> Dict[str, Any]:
    """Realized kernel of N- next to the algebraic candidate lowest weights."""
    g = telescope_g(f)
    realized = find_vacua(t)
    casimirs = {casimir_value(g, v.weight) for v in realized}
    algebraic = [
        {"casimir": c, "weights": vacuum_weights(g, c)} for c in sorted(casimirs)
    ]
    return {"realized": realized, "algebraic": algebraic}
