from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, List, Sequence, Tuple

import numpy as np

from ..common.errors import DomainError
from ..common.export import rows_to_csv
from ..common.rational import format_fraction
from ..repspace import LoweringModule, extend_module
from ..specialfn import quad_semi_infinite

logger = logging.getLogger(__name__)

Density = Callable[[float], float]


@dataclass(frozen=True)
class MomentSequence:
    """rho_n = prod_{k<=n} s[k], the radial moments a resolving measure must reproduce."""

    values: np.ndarray
    exact: Tuple[Fraction, ...]
    module: LoweringModule | None = field(default=None, compare=False, repr=False)

    @property
    def n_max(self) -> int:
        return len(self.exact) - 1


def moment_sequence(mod: LoweringModule, n_max: int) -> MomentSequence:
    if n_max < 0:
        raise DomainError("n_max must be non-negative", n_max=n_max)
    if n_max >= mod.dimension:
        if mod.is_finite or mod.ladder is None:
            raise DomainError(
                f"the module has {mod.dimension} levels, moments up to {n_max} need more",
                dimension=mod.dimension,
                n_max=n_max,
            )
        mod = extend_module(mod, n_max + 1)
    exact = [Fraction(1)]
    logs = [0.0]
    for k in range(1, n_max + 1):
        s_k = mod.s[k]
        exact.append(exact[-1] * s_k)
        logs.append(logs[-1] + math.log(s_k.numerator) - math.log(s_k.denominator))
    return MomentSequence(values=np.exp(np.array(logs)), exact=tuple(exact), module=mod)


def quadrature_moments(density: Density, n_max: int, quad_tol: float = 1e-10) -> np.ndarray:
    """2 pi int_0^inf density(r) r^(2n+1) dr for n = 0..n_max."""
    out = []
    for n in range(n_max + 1):
        integrand = lambda r, n=n: 2.0 * math.pi * density(r) * r ** (2 * n + 1)  # noqa: E731
        out.append(quad_semi_infinite(integrand, tol=quad_tol, rel_tol=quad_tol))
    return np.array(out)


def _relative_errors(quad: np.ndarray, moments: MomentSequence, n_max: int) -> np.ndarray:
    if quad[0] == 0.0:
        raise DomainError("the density has a vanishing n=0 moment and cannot be normalized")
    expected = moments.values[: n_max + 1] / moments.values[0]
    return np.abs(quad / quad[0] - expected) / expected


def verify_moments(
    density: Density,
    moments: MomentSequence,
    n_max: int | None = None,
    quad_tol: float = 1e-10,
) -> float:
    """Largest relative mismatch between normalized quadrature and ladder moments."""
    n_max = moments.n_max if n_max is None else n_max
    quad = quadrature_moments(density, n_max, quad_tol)
    errors = _relative_errors(quad, moments, n_max)
    logger.debug("moment check up to n=%d: max relative error %.3g", n_max, errors.max())
    return float(errors.max())


def moment_table(
    moments: MomentSequence,
    density: Density | None = None,
    quad_tol: float = 1e-10,
) -> List[Tuple[Any, ...]]:
    """Rows (n, exact ratio, value, quadrature value, relative error); the last two empty without a density."""
    ratios = [value / moments.exact[0] for value in moments.exact]
    if density is None:
        return [
            (n, format_fraction(ratio), float(moments.values[n]), "", "")
            for n, ratio in enumerate(ratios)
        ]
    quad = quadrature_moments(density, moments.n_max, quad_tol)
    errors = _relative_errors(quad, moments, moments.n_max)
    normalized = quad / quad[0]
    return [
        (n, format_fraction(ratio), float(moments.values[n]), float(normalized[n]), float(errors[n]))
        for n, ratio in enumerate(ratios)
    ]


MOMENT_HEADER: Sequence[str] = ("n", "ratio", "value", "quadrature", "relative_error")


def moment_table_csv(rows: List[Tuple[Any, ...]]) -> str:
    return rows_to_csv(MOMENT_HEADER, rows)
