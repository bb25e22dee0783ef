from .analysis import (
    Vacuum,
    casimir_diagonal,
    check_diagonal,
    closure_fit,
    commutator_diagonal,
    conservation_check,
    find_vacua,
    oracle_fidelity,
    orbit,
    sector_chains,
    sector_series,
    sector_to_module,
    vacuum_report,
)
from .builders import (
    realize_dicke,
    realize_multiphoton,
    realize_pair,
    realize_su11_single,
    realize_trilinear,
    trilinear_j0,
    trilinear_sectors,
)
from .sector import FockSector, LadderMonomial, RealizedTriple, build_sector, charge_sectors

__all__ = [
    "FockSector",
    "LadderMonomial",
    "RealizedTriple",
    "Vacuum",
    "build_sector",
    "casimir_diagonal",
    "charge_sectors",
    "check_diagonal",
    "closure_fit",
    "commutator_diagonal",
    "conservation_check",
    "find_vacua",
    "oracle_fidelity",
    "orbit",
    "realize_dicke",
    "realize_multiphoton",
    "realize_pair",
    "realize_su11_single",
    "realize_trilinear",
    "sector_chains",
    "sector_series",
    "sector_to_module",
    "trilinear_j0",
    "trilinear_sectors",
    "vacuum_report",
]
