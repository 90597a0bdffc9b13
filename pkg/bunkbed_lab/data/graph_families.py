"""
Named graph families used by the checks and the experiment harness.
"""
from typing import Iterator

import networkx as nx

from bunkbed_lab.graphcore import BaseGraph, BunkbedGraph

ATLAS_MAX_VERTICES = 7


def from_networkx(graph: nx.Graph) -> BaseGraph:
    """
    Converts a networkx graph into a `BaseGraph`, relabelling vertices `0..n-1` in sorted order.
    """
    labels = {node: i for i, node in enumerate(sorted(graph.nodes))}
    edges = sorted(tuple(sorted((labels[a], labels[b]))) for a, b in graph.edges)
    return BaseGraph(len(labels), edges)


def path_graph(n: int) -> BaseGraph:
    """Path `P_n` of length `n`: vertices `0..n`, edges `(i, i+1)`."""
    if n < 0:
        raise ValueError("Path length must be non-negative, got {}".format(n))
    return BaseGraph(n + 1, [(i, i + 1) for i in range(n)])


def cycle_graph(n: int) -> BaseGraph:
    if n < 3:
        raise ValueError("A simple cycle needs n >= 3, got {}".format(n))
    return from_networkx(nx.cycle_graph(n))


def complete_graph(n: int) -> BaseGraph:
    if n < 1:
        raise ValueError("A complete graph needs n >= 1, got {}".format(n))
    return from_networkx(nx.complete_graph(n))


def star_graph(leaves: int) -> BaseGraph:
    """Star `K_{1,leaves}` with center 0."""
    if leaves < 1:
        raise ValueError("A star needs at least one leaf, got {}".format(leaves))
    return BaseGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bridged_triangles() -> BaseGraph:
    """Triangles 0-1-2 and 3-4-5 joined by the bridge (2, 3)."""
    return BaseGraph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


def ladder(n: int) -> BunkbedGraph:
    """Ladder graph `P_n x K2`."""
    return BunkbedGraph(path_graph(n))


def exhaustive_connected_graphs(n_max: int, n_min: int = 2) -> Iterator[BaseGraph]:
    """
    All connected graphs with `n_min..n_max` vertices, one per isomorphism class.

    Graphs come from the networkx graph atlas, in atlas order (by vertex count, then edge count, then degree sequence),
    which makes the enumeration canonical.

    Args:
        n_max: largest vertex count, at most 7.
        n_min: smallest vertex count.
    """
    if n_max > ATLAS_MAX_VERTICES:
        raise ValueError("Exhaustive enumeration is limited to {} vertices, got {}".format(ATLAS_MAX_VERTICES, n_max))
    n_min = max(n_min, 1)
    for graph in nx.graph_atlas_g():
        if n_min <= graph.number_of_nodes() <= n_max and nx.is_connected(graph):
            yield from_networkx(graph)
