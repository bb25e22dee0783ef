from .density import bg_density, bg_density_printed, gaussian_density
from .moments import (
    MOMENT_HEADER,
    MomentSequence,
    moment_sequence,
    moment_table,
    moment_table_csv,
    quadrature_moments,
    verify_moments,
)

__all__ = [
    "MOMENT_HEADER",
    "MomentSequence",
    "bg_density",
    "bg_density_printed",
    "gaussian_density",
    "moment_sequence",
    "moment_table",
    "moment_table_csv",
    "quadrature_moments",
    "verify_moments",
]
