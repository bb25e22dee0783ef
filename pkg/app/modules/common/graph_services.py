from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx


def build_ladder_graph(n_nodes: int, edges: Iterable[Tuple[int, int]]) -> nx.DiGraph:
    """Directed graph of a raising operator: an edge k -> i for every nonzero <i|N+|k>."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n_nodes))
    graph.add_edges_from(edges)
    return graph


def get_chains(graph: nx.DiGraph) -> List[List[int]]:
    """Split the sector into ladder chains, each ordered from its lowest state upward."""
    chains: List[List[int]] = []
    for component in nx.weakly_connected_components(graph):
        sub = graph.subgraph(component)
        chains.append(list(nx.topological_sort(sub)))
    chains.sort(key=lambda chain: chain[0])
    return chains


def follow_orbit(graph: nx.DiGraph, start: int) -> List[int]:
    """Walk the unique successor of each node until the ladder stops."""
    orbit = [start]
    seen = {start}
    current = start
    while True:
        successors = list(graph.successors(current))
        if not successors:
            return orbit
        if len(successors) > 1:
            raise ValueError(f"node {current} has {len(successors)} raising targets")
        current = successors[0]
        if current in seen:
            raise ValueError(f"raising orbit from {start} cycles at node {current}")
        seen.add(current)
        orbit.append(current)


def chain_statistics(chains: Sequence[Sequence[int]]) -> Dict[str, int]:
    lengths = [len(chain) for chain in chains]
    return {
        "chain_count": len(chains),
        "longest_chain": max(lengths, default=0),
        "states": sum(lengths),
    }
