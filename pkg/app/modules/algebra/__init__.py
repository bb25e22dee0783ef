from .polynomial import (
    DEFAULT_MAX_DEGREE,
    CasimirPolynomial,
    StructurePolynomial,
    casimir_value,
    compose,
    eval_f,
    eval_g,
    forward_difference,
    interpolate_exact,
    shift,
    telescope_g,
    vacuum_weights,
)

__all__ = [
    "DEFAULT_MAX_DEGREE",
    "CasimirPolynomial",
    "StructurePolynomial",
    "casimir_value",
    "compose",
    "eval_f",
    "eval_g",
    "forward_difference",
    "interpolate_exact",
    "shift",
    "telescope_g",
    "vacuum_weights",
]
