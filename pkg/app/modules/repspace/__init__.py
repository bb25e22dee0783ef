from .matrices import (
    OperatorTriple,
    commutator,
    commutator_residual,
    interior_residual,
    ladder_matrices,
    triple_to_csv,
)
from .module import (
    LoweringModule,
    barut_girardello_ladder,
    build_module,
    extend_module,
    ladder_polynomial,
    module_from_json,
    module_from_ladder,
    module_from_ladder_polynomial,
    module_to_json,
    three_boson_ladder,
)

__all__ = [
    "LoweringModule",
    "OperatorTriple",
    "barut_girardello_ladder",
    "build_module",
    "commutator",
    "commutator_residual",
    "extend_module",
    "interior_residual",
    "ladder_matrices",
    "ladder_polynomial",
    "module_from_json",
    "module_from_ladder",
    "module_from_ladder_polynomial",
    "module_to_json",
    "three_boson_ladder",
    "triple_to_csv",
]
