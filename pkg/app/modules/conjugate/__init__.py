from .construction import (
    ConjugateSpec,
    UndeformedMapSpec,
    conjugate_raising,
    conjugate_residual,
    conjugate_spec,
    delta_for_vacuum,
    dual_vacua,
    epsilon_for_vacuum,
    map_residual,
    mapped_lowering,
    undeformed_map,
    undeformed_map_spec,
)

__all__ = [
    "ConjugateSpec",
    "UndeformedMapSpec",
    "conjugate_raising",
    "conjugate_residual",
    "conjugate_spec",
    "delta_for_vacuum",
    "dual_vacua",
    "epsilon_for_vacuum",
    "map_residual",
    "mapped_lowering",
    "undeformed_map",
    "undeformed_map_spec",
]
