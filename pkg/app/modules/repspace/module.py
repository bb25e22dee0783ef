from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..algebra import CasimirPolynomial, casimir_value, interpolate_exact, shift
from ..common.errors import DomainError, NonUnitary
from ..common.rational import (
    RationalLike,
    format_fraction,
    format_fractions,
    horner,
    to_fraction,
    to_fractions,
    trim,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoweringModule:
    """Lowest-weight module truncated at ``cutoff`` levels.

    ``s[m]`` is the squared ladder coefficient between levels m-1 and m, with
    s[0] = 0. A terminated module keeps its closing zero: ``s[termination_index]``
    is 0 and the module has exactly ``termination_index`` states.
    """

    vacuum_weight: Fraction
    casimir: Fraction | None
    cutoff: int
    s: Tuple[Fraction, ...]
    termination_index: int | None = None
    g: CasimirPolynomial | None = field(default=None, compare=False)
    ladder: Tuple[Fraction, ...] | None = field(default=None, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.termination_index is not None

    @property
    def dimension(self) -> int:
        if self.termination_index is not None:
            return self.termination_index
        return self.cutoff

    @property
    def is_extendable(self) -> bool:
        return self.ladder is not None and not self.is_finite

    def weights(self) -> List[Fraction]:
        return [self.vacuum_weight + m for m in range(self.dimension)]

    def s_array(self) -> np.ndarray:
        """Float copy of s over the occupied levels."""
        return np.array([float(v) for v in self.s[: self.dimension]], dtype=float)


def _scan_ladder(s: Sequence[Fraction]) -> Tuple[Tuple[Fraction, ...], int | None]:
    if s[0] != 0:
        raise DomainError("ladder tables start with s[0] = 0", first=s[0])
    for m in range(1, len(s)):
        if s[m] == 0:
            logger.debug("ladder terminates at level %d", m)
            return tuple(s[: m + 1]), m
        if s[m] < 0:
            raise NonUnitary(
                f"s[{m}] = {format_fraction(s[m])} is negative before any zero",
                level=m,
                value=format_fraction(s[m]),
            )
    return tuple(s), None


def _ladder_from_g(g: CasimirPolynomial, w0: Fraction, casimir: Fraction) -> Tuple[Fraction, ...]:
    # s(m) = C - g(w0 + m - 1) as a polynomial in m
    shifted = [-c for c in shift(g.coeffs, w0 - 1)]
    if not shifted:
        shifted = [Fraction(0)]
    shifted[0] += casimir
    return trim(shifted)


def build_module(g: CasimirPolynomial, w0: RationalLike, D: int) -> LoweringModule:
    if D < 2:
        raise DomainError("a module needs at least two levels", cutoff=D)
    w0 = to_fraction(w0)
    casimir = casimir_value(g, w0)
    ladder = _ladder_from_g(g, w0, casimir)
    table = [Fraction(0)] + [horner(ladder, Fraction(m)) for m in range(1, D)]
    s, termination = _scan_ladder(table)
    return LoweringModule(
        vacuum_weight=w0,
        casimir=casimir,
        cutoff=D,
        s=s,
        termination_index=termination,
        g=g,
        ladder=ladder,
    )


def module_from_ladder(
    s_table: Sequence[RationalLike],
    w0: RationalLike,
    casimir: RationalLike | None = None,
) -> LoweringModule:
    """Module whose matrices reproduce an explicit ladder table; not extendable."""
    table = to_fractions(s_table)
    if not table:
        raise DomainError("empty ladder table")
    s, termination = _scan_ladder(table)
    return LoweringModule(
        vacuum_weight=to_fraction(w0),
        casimir=None if casimir is None else to_fraction(casimir),
        cutoff=len(table),
        s=s,
        termination_index=termination,
    )


def module_from_ladder_polynomial(
    coeffs: Sequence[RationalLike],
    w0: RationalLike,
    D: int,
    casimir: RationalLike | None = None,
) -> LoweringModule:
    """Module from s(m) given in closed form; it can be extended like a g-built one."""
    ladder = trim(to_fractions(coeffs))
    if ladder and ladder[0] != 0:
        raise DomainError("the ladder polynomial must vanish at m = 0", constant=ladder[0])
    table = [Fraction(0)] + [horner(ladder, Fraction(m)) for m in range(1, D)]
    module = module_from_ladder(table, w0, casimir)
    return LoweringModule(
        vacuum_weight=module.vacuum_weight,
        casimir=module.casimir,
        cutoff=module.cutoff,
        s=module.s,
        termination_index=module.termination_index,
        ladder=ladder,
    )


def extend_module(mod: LoweringModule, D: int) -> LoweringModule:
    """Same module at a new cutoff; needs a closed-form ladder."""
    if mod.ladder is None:
        raise DomainError("a module read from a ladder table cannot be extended", cutoff=mod.cutoff)
    if D == mod.cutoff:
        return mod
    if mod.g is not None:
        return build_module(mod.g, mod.vacuum_weight, D)
    return module_from_ladder_polynomial(mod.ladder, mod.vacuum_weight, D, mod.casimir)


def ladder_polynomial(mod: LoweringModule) -> Tuple[Fraction, ...]:
    """s(m) as exact coefficients in m, lowest degree first."""
    if mod.ladder is not None:
        return mod.ladder
    points = range(len(mod.s))
    return interpolate_exact([Fraction(m) for m in points], list(mod.s))


def three_boson_ladder(epsilon: RationalLike) -> Tuple[Fraction, ...]:
    """m(m - 1/2 - eps)(m + 1/2 - eps)."""
    eps = to_fraction(epsilon)
    return (Fraction(0), eps * eps - Fraction(1, 4), -2 * eps, Fraction(1))


def barut_girardello_ladder(phi: RationalLike) -> Tuple[Fraction, ...]:
    """m(m - 1 - 2 phi)."""
    phi = to_fraction(phi)
    return (Fraction(0), -1 - 2 * phi, Fraction(1))


def module_to_json(mod: LoweringModule) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "w0": format_fraction(mod.vacuum_weight),
        "C": None if mod.casimir is None else format_fraction(mod.casimir),
        "D": mod.cutoff,
        "s": format_fractions(mod.s),
        "termination": mod.termination_index,
    }
    if mod.g is not None:
        payload["g"] = mod.g.to_json()
    if mod.ladder is not None:
        payload["ladder"] = format_fractions(mod.ladder)
    return payload


def module_from_json(data: Dict[str, Any]) -> LoweringModule:
    g = CasimirPolynomial.from_json(data["g"]) if data.get("g") is not None else None
    ladder = to_fractions(data["ladder"]) if data.get("ladder") is not None else None
    termination = data.get("termination")
    return LoweringModule(
        vacuum_weight=to_fraction(data["w0"]),
        casimir=None if data.get("C") is None else to_fraction(data["C"]),
        cutoff=int(data["D"]),
        s=to_fractions(data["s"]),
        termination_index=None if termination is None else int(termination),
        g=g,
        ladder=ladder,
    )
