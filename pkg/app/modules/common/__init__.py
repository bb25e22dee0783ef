from .errors import LabError
from .graph_services import build_ladder_graph, chain_statistics, follow_orbit, get_chains
from .rational import format_fraction, horner, to_fraction, to_fractions

__all__ = [
    "LabError",
    "build_ladder_graph",
    "chain_statistics",
    "follow_orbit",
    "format_fraction",
    "get_chains",
    "horner",
    "to_fraction",
    "to_fractions",
]
