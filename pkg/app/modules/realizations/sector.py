from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from ..common.errors import EmptySector
from ..common.export import rows_to_csv
from ..common.rational import format_fraction

logger = logging.getLogger(__name__)

State = Tuple[Any, ...]
ChargeFn = Callable[[State], Dict[str, Fraction]]


def _falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1), the squared amplitude of a**k on |n>."""
    out = 1
    for i in range(k):
        out *= n - i
    return max(out, 0)


def _rising(n: int, k: int) -> int:
    """(n+1) ... (n+k), the squared amplitude of (a†)**k on |n>."""
    out = 1
    for i in range(1, k + 1):
        out *= n + i
    return out


@dataclass(frozen=True)
class LadderMonomial:
    """N+ as a scaled product of single-mode powers.

    ``shift[i]`` is the occupation change of mode i. When ``spin`` is set,
    mode 0 is a collective spin of that size and its entry is m_z; a shift
    of +1 there is J+.
    """

    shift: Tuple[int, ...]
    scale_sq: Fraction = Fraction(1)
    spin: Fraction | None = None

    def valid(self, state: State) -> bool:
        for i, value in enumerate(state):
            if i == 0 and self.spin is not None:
                if abs(value) > self.spin:
                    return False
            elif value < 0:
                return False
        return True

    def target(self, state: State) -> State:
        return tuple(v + d for v, d in zip(state, self.shift))

    def source(self, state: State) -> State:
        return tuple(v - d for v, d in zip(state, self.shift))

    def squared(self, state: State) -> Fraction:
        """Squared coefficient of N+ on ``state`` in the full space."""
        if not self.valid(state) or not self.valid(self.target(state)):
            return Fraction(0)
        value = Fraction(self.scale_sq)
        for i, (n, d) in enumerate(zip(state, self.shift)):
            if i == 0 and self.spin is not None:
                j, mz = self.spin, n
                for step in range(d):
                    value *= (j - (mz + step)) * (j + (mz + step) + 1)
            elif d > 0:
                value *= _rising(n, d)
            elif d < 0:
                value *= _falling(n, -d)
        return value


@dataclass(frozen=True)
class FockSector:
    modes: Tuple[str, ...]
    mode_cutoffs: Tuple[int, ...]
    basis: Tuple[State, ...]
    charges: Dict[str, Fraction]
    spin: Fraction | None = None
    index: Dict[State, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.index:
            object.__setattr__(self, "index", {state: i for i, state in enumerate(self.basis)})

    @property
    def size(self) -> int:
        return len(self.basis)

    def within_cutoffs(self, state: State) -> bool:
        for i, (value, cutoff) in enumerate(zip(state, self.mode_cutoffs)):
            if i == 0 and self.spin is not None:
                if abs(value) > self.spin:
                    return False
            elif not 0 <= value <= cutoff:
                return False
        return True

    def to_json(self) -> Dict[str, Any]:
        return {
            "modes": list(self.modes),
            "mode_cutoffs": list(self.mode_cutoffs),
            "charges": {k: format_fraction(v) for k, v in sorted(self.charges.items())},
            "basis": [[_plain(v) for v in state] for state in self.basis],
        }


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else format_fraction(value)
    return value


def _mode_ranges(mode_cutoffs: Sequence[int], spin: Fraction | None) -> List[Iterable[Any]]:
    ranges: List[Iterable[Any]] = []
    for i, cutoff in enumerate(mode_cutoffs):
        if i == 0 and spin is not None:
            ranges.append([-spin + k for k in range(int(2 * spin) + 1)])
        else:
            ranges.append(range(cutoff + 1))
    return ranges


def enumerate_states(mode_cutoffs: Sequence[int], spin: Fraction | None = None) -> List[State]:
    return [tuple(state) for state in itertools.product(*_mode_ranges(mode_cutoffs, spin))]


def charge_sectors(
    mode_cutoffs: Sequence[int],
    charge_fn: ChargeFn,
    spin: Fraction | None = None,
) -> List[Dict[str, Fraction]]:
    """Every charge assignment that some state within the cutoffs carries."""
    seen = {}
    for state in enumerate_states(mode_cutoffs, spin):
        charges = charge_fn(state)
        seen[tuple(sorted(charges.items()))] = charges
    return [seen[key] for key in sorted(seen)]


def build_sector(
    modes: Sequence[str],
    mode_cutoffs: Sequence[int],
    charge_fn: ChargeFn,
    charges: Dict[str, Fraction],
    spin: Fraction | None = None,
) -> FockSector:
    basis = tuple(
        state for state in enumerate_states(mode_cutoffs, spin) if charge_fn(state) == charges
    )
    if not basis:
        raise EmptySector(
            "no basis state carries the requested charges within the cutoffs",
            charges={k: format_fraction(v) for k, v in charges.items()},
            cutoffs=tuple(mode_cutoffs),
        )
    logger.debug("sector %s has %d states", charges, len(basis))
    return FockSector(
        modes=tuple(modes),
        mode_cutoffs=tuple(mode_cutoffs),
        basis=basis,
        charges=dict(charges),
        spin=spin,
    )


@dataclass(frozen=True)
class RealizedTriple:
    """Generators restricted to a sector, with squared-coefficient bookkeeping.

    ``nplus`` maps (row, col) to the squared matrix element of N+. ``out_s``
    and ``in_s`` are the squared amplitudes of N+ and N- on each basis state
    in the untruncated space, so the commutator diagonal is exact even on
    the cutoff boundary.
    """

    name: str
    sector: FockSector
    recipe: LadderMonomial
    n0: Tuple[Fraction, ...]
    nplus: Dict[Tuple[int, int], Fraction]
    out_s: Tuple[Fraction, ...]
    in_s: Tuple[Fraction, ...]
    raise_boundary: FrozenSet[int]
    lower_boundary: FrozenSet[int]
    leaks: Tuple[Tuple[int, State], ...]
    charge_fn: ChargeFn = field(compare=False, repr=False)
    n0_fn: Callable[[State], Fraction] = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.sector.size

    @property
    def boundary(self) -> FrozenSet[int]:
        return self.raise_boundary | self.lower_boundary

    def edges(self) -> List[Tuple[int, int]]:
        """(source, target) pairs of the raising operator."""
        return sorted((col, row) for row, col in self.nplus)

    def nplus_dense(self) -> np.ndarray:
        matrix = np.zeros((self.size, self.size))
        for (row, col), value in self.nplus.items():
            matrix[row, col] = np.sqrt(float(value))
        return matrix

    def nminus_dense(self) -> np.ndarray:
        return self.nplus_dense().T.copy()

    def n0_dense(self) -> np.ndarray:
        return np.diag([float(v) for v in self.n0])

    def to_coordinate_csv(self) -> str:
        rows = [(row, col, value) for (row, col), value in sorted(self.nplus.items())]
        return rows_to_csv(["row", "col", "s"], rows)


def assemble(
    name: str,
    sector: FockSector,
    recipe: LadderMonomial,
    n0_fn: Callable[[State], Fraction],
    charge_fn: ChargeFn,
) -> RealizedTriple:
    nplus: Dict[Tuple[int, int], Fraction] = {}
    out_s: List[Fraction] = []
    in_s: List[Fraction] = []
    raise_boundary = set()
    lower_boundary = set()
    leaks: List[Tuple[int, State]] = []
    for col, state in enumerate(sector.basis):
        up = recipe.squared(state)
        out_s.append(up)
        if up:
            target = recipe.target(state)
            if target in sector.index:
                nplus[(sector.index[target], col)] = up
            elif sector.within_cutoffs(target):
                leaks.append((col, target))
            else:
                raise_boundary.add(col)
        source = recipe.source(state)
        down = recipe.squared(source)
        in_s.append(down)
        if down and source not in sector.index:
            if sector.within_cutoffs(source):
                leaks.append((col, source))
            else:
                lower_boundary.add(col)
    return RealizedTriple(
        name=name,
        sector=sector,
        recipe=recipe,
        n0=tuple(n0_fn(state) for state in sector.basis),
        nplus=nplus,
        out_s=tuple(out_s),
        in_s=tuple(in_s),
        raise_boundary=frozenset(raise_boundary),
        lower_boundary=frozenset(lower_boundary),
        leaks=tuple(leaks),
        charge_fn=charge_fn,
        n0_fn=n0_fn,
    )
