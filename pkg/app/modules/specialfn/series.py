from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..common.errors import BParameterPole, DomainError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-16
MAX_TERMS = 20000
# the geometric tail estimate is only trusted below this term ratio
TAIL_RATIO = 0.5


@dataclass(frozen=True)
class SeriesResult:
    value: complex | float
    terms_used: int
    converged: bool
    bound: float


def _is_nonpositive_integer(value: complex | float) -> bool:
    value = complex(value)
    return value.imag == 0 and value.real <= 0 and float(value.real).is_integer()


def pfq(
    a: Sequence[complex | float],
    b: Sequence[complex | float],
    z: complex | float,
    tol: float = DEFAULT_TOL,
    max_terms: int = MAX_TERMS,
) -> SeriesResult:
    """Sum pFq(a; b; z) by its term recurrence.

    ``bound`` is a relative bound on the discarded tail. It is a geometric
    majorant taken once the term ratio has dropped below 1/2 and every
    parameter shift is past its sign change, so the ratios that follow only
    shrink.
    """
    if len(a) > len(b):
        raise DomainError("only entire series (p <= q) are supported", p=len(a), q=len(b))
    for value in b:
        if _is_nonpositive_integer(value):
            raise BParameterPole(f"lower parameter {value} is a non-positive integer", parameter=value)

    real_input = all(isinstance(v, (int, float)) for v in [*a, *b, z])
    safe_index = 2 * int(max([abs(complex(v)) for v in [*a, *b]], default=0.0)) + 1

    term = complex(1.0)
    total = complex(1.0)
    bound = float("inf")
    converged = False
    n = 0
    while n < max_terms:
        ratio = complex(z) / (n + 1)
        for value in a:
            ratio *= value + n
        for value in b:
            ratio /= value + n
        term *= ratio
        n += 1
        if term == 0:
            bound = 0.0
            converged = True
            break
        total += term
        next_ratio = abs(complex(z) / (n + 1))
        for value in a:
            next_ratio *= abs(value + n)
        for value in b:
            next_ratio /= abs(value + n)
        if n >= safe_index and next_ratio < TAIL_RATIO:
            scale = max(abs(total), 1e-300)
            bound = abs(term) * next_ratio / (1.0 - next_ratio) / scale
            if bound < tol:
                converged = True
                break

    if not converged:
        logger.debug("pfq stopped after %d terms with tail bound %.3g", n, bound)
    value: complex | float = total.real if real_input else total
    return SeriesResult(value=value, terms_used=n + 1, converged=converged, bound=bound)
