"""
Graphs, bunkbed graphs and weighted networks.

Vertices are the integers `0..vertex_count-1` and every edge carries an integer id stored in its "idx" attribute.
Once built, graphs are frozen.

A bunkbed graph `G x K2` over a base graph with `n` vertices and `m` edges uses the following id scheme:

* vertex `(u, layer)` has id `layer * n + u`,
* edge ids `0..m-1` are the layer-0 horizontal copies of the base edges (base order),
* edge ids `m..2m-1` are the layer-1 horizontal copies (base order),
* edge id `2m + u` is the vertical edge `u0 u1`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from bunkbed_lab.exceptions import MalformedEdge, NotAnEdge
from bunkbed_lab.utils import RationalLike, parse_rational

# Base types
Vertex = int
EdgeId = int
Edge = Tuple[Vertex, Vertex]

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


########################################################################################################################
# Graphs
########################################################################################################################


class BaseGraph(nx.Graph):
    def __init__(self, vertex_count: int, edge_list: Iterable[Sequence[int]]):
        """
        Simple undirected graph on the vertices `0..vertex_count-1`. It inherits from `nx.Graph` and is formatted such
        that:

        * edges are stored as pairs `(u, v)` with `u < v`, in the order they were given,
        * each edge has an "idx" attribute equal to its position in `edge_list`,
        * self-loops and duplicate edges are rejected.

        Once instantiated, the structure of the graph is frozen.

        Args:
            vertex_count (int): number of vertices, at least 1.
            edge_list (Iterable[Sequence[int]]): unordered vertex pairs.

        Raises:
            MalformedEdge: out-of-range endpoint, self-loop or duplicate edge.
        """
        super().__init__()
        if int(vertex_count) < 1:
            raise ValueError("A graph needs at least one vertex, got vertex_count={}".format(vertex_count))

        self._vertex_count = int(vertex_count)
        self._edge_list = self._normalized_edges(self._vertex_count, edge_list)

        self.add_nodes_from(range(self._vertex_count))
        for idx, (u, v) in enumerate(self._edge_list):
            self.add_edge(u, v, idx=idx)

        self._sorted_adjacency = tuple(tuple(sorted(self.adj[u])) for u in range(self._vertex_count))
        self._annotate()

        # Freeze the graph
        nx.freeze(self)

    @staticmethod
    def _normalized_edges(vertex_count: int, edge_list: Iterable[Sequence[int]]) -> Tuple[Edge, ...]:
        edges = []
        seen = set()
        for pair in edge_list:
            if len(pair) != 2:
                raise MalformedEdge("Edges are vertex pairs, got {!r}".format(pair))
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise MalformedEdge("Edge ({}, {}) has an endpoint outside 0..{}".format(u, v, vertex_count - 1))
            if u == v:
                raise MalformedEdge("Self-loop at vertex {}".format(u))
            edge = (min(u, v), max(u, v))
            if edge in seen:
                raise MalformedEdge("Duplicate edge {}".format(edge))
            seen.add(edge)
            edges.append(edge)
        return tuple(edges)

    def _annotate(self) -> None:
        """Hook for subclasses to add node and edge attributes before the graph is frozen."""

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def edge_count(self) -> int:
        return len(self._edge_list)

    @property
    def edge_list(self) -> Tuple[Edge, ...]:
        """
        (``Tuple[Edge, ...]``) Normalized edges `(u, v)`, `u < v`, indexed by edge id.
        """
        return self._edge_list

    def sorted_neighbors(self, u: Vertex) -> Tuple[Vertex, ...]:
        """Neighbors of `u` in ascending order."""
        return self._sorted_adjacency[u]

    def endpoints(self, edge_id: EdgeId) -> Edge:
        return self._edge_list[edge_id]

    def edge_id(self, u: Vertex, v: Vertex) -> EdgeId:
        """
        Raises:
            NotAnEdge: if `uv` is not an edge.
        """
        if not self.has_edge(u, v):
            raise NotAnEdge("({}, {}) is not an edge".format(u, v))
        return self.edges[u, v]["idx"]

    def other_endpoint(self, edge_id: EdgeId, u: Vertex) -> Vertex:
        a, b = self._edge_list[edge_id]
        return b if u == a else a

    @cached_property
    def is_connected(self) -> bool:
        return nx.is_connected(self)

    def component_of(self, u: Vertex) -> List[Vertex]:
        """Sorted vertices of the connected component containing `u`."""
        return sorted(nx.node_connected_component(self, u))

    def oriented_edge(self, edge_id: EdgeId, direction: int = 0) -> OrientedEdge:
        u, v = self._edge_list[edge_id]
        if direction == 0:
            return OrientedEdge(edge_id, 0, u, v)
        return OrientedEdge(edge_id, 1, v, u)

    def oriented_edges(self) -> Iterator[OrientedEdge]:
        """Both orientations of every edge, by edge id."""
        for edge_id in range(self.edge_count):
            yield self.oriented_edge(edge_id, 0)
            yield self.oriented_edge(edge_id, 1)

    def to_dict(self) -> Dict[str, object]:
        return {"n": self._vertex_count, "edges": [list(e) for e in self._edge_list]}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> BaseGraph:
        return BaseGraph(int(data["n"]), [tuple(e) for e in data["edges"]])

    def __repr__(self) -> str:
        return "{}(vertex_count={}, edge_count={})".format(type(self).__name__, self.vertex_count, self.edge_count)


class BunkbedGraph(BaseGraph):
    def __init__(self, base: BaseGraph):
        """
        Cartesian product `base x K2`. Vertex and edge ids follow the scheme documented at the top of this module.

        Nodes carry "base" and "layer" attributes. Edges carry "kind" (horizontal or vertical), "layer" (None for
        vertical edges) and "base_edge" or "base_vertex".

        Args:
            base (BaseGraph): the graph G.
        """
        self.base = base
        n, m = base.vertex_count, base.edge_count
        edges = [e for e in base.edge_list]
        edges += [(u + n, v + n) for u, v in base.edge_list]
        edges += [(u, u + n) for u in range(n)]
        super().__init__(2 * n, edges)
        assert self.edge_count == 2 * m + n

    def _annotate(self) -> None:
        n, m = self.base.vertex_count, self.base.edge_count
        for w in range(self.vertex_count):
            self.nodes[w]["base"] = w % n
            self.nodes[w]["layer"] = w // n
        for idx, (a, b) in enumerate(self.edge_list):
            attributes = self.edges[a, b]
            if idx < 2 * m:
                attributes.update(kind=HORIZONTAL, layer=idx // m, base_edge=idx % m)
            else:
                attributes.update(kind=VERTICAL, layer=None, base_vertex=idx - 2 * m)

    @property
    def n(self) -> int:
        """Number of vertices of the base graph."""
        return self.base.vertex_count

    @property
    def m(self) -> int:
        """Number of edges of the base graph."""
        return self.base.edge_count

    def vertex(self, u: Vertex, layer: int) -> Vertex:
        """Id of `u_layer`."""
        if layer not in (0, 1) or not 0 <= u < self.n:
            raise ValueError("No bunkbed vertex ({}, {})".format(u, layer))
        return layer * self.n + u

    def split(self, w: Vertex) -> Tuple[Vertex, int]:
        """Inverse of `vertex`: returns `(u, layer)`."""
        return w % self.n, w // self.n

    def reflect_vertex(self, w: Vertex) -> Vertex:
        u, layer = self.split(w)
        return self.vertex(u, 1 - layer)

    def horizontal_edge(self, base_edge: EdgeId, layer: int) -> EdgeId:
        return layer * self.m + base_edge

    def vertical_edge(self, u: Vertex) -> EdgeId:
        return 2 * self.m + u

    def is_vertical(self, edge_id: EdgeId) -> bool:
        return edge_id >= 2 * self.m

    def is_horizontal(self, edge_id: EdgeId) -> bool:
        return edge_id < 2 * self.m

    def reflect_edge(self, edge_id: EdgeId) -> EdgeId:
        if self.is_vertical(edge_id):
            return edge_id
        return (edge_id + self.m) % (2 * self.m)

    def horizontal_pairs(self) -> Iterator[Tuple[EdgeId, EdgeId]]:
        """Pairs `(e0, e1)` of the two horizontal copies of every base edge."""
        for base_edge in range(self.m):
            yield base_edge, base_edge + self.m

    def symmetric_weights(self, horizontal: Sequence[RationalLike], vertical: Sequence[RationalLike]) -> List[Fraction]:
        """
        Per-edge weights from one weight per base edge (used on both layers) and one weight per vertical edge.

        Args:
            horizontal: `m` weights, in base edge order.
            vertical: `n` weights, in vertex order.

        Returns:
            List[Fraction]: `2m + n` weights indexed by bunkbed edge id.
        """
        if len(horizontal) != self.m or len(vertical) != self.n:
            raise ValueError(
                "Expected {} horizontal and {} vertical weights, got {} and {}".format(
                    self.m, self.n, len(horizontal), len(vertical)
                )
            )
        horizontal = [_as_fraction(w) for w in horizontal]
        return horizontal + horizontal + [_as_fraction(w) for w in vertical]

    def rearrange_layers(self, values: Sequence) -> List:
        """
        Min/max rearrangement of a vertex function: `h(u0) = max(f(u0), f(u1))` and `h(u1) = min(f(u0), f(u1))`.

        Works for any totally ordered values (rationals, floats).

        Args:
            values: `f`, indexed by bunkbed vertex id.

        Returns:
            List: `h`, indexed by bunkbed vertex id.
        """
        if len(values) != self.vertex_count:
            raise ValueError("Expected {} values, got {}".format(self.vertex_count, len(values)))
        n = self.n
        upper = [max(values[u], values[u + n]) for u in range(n)]
        lower = [min(values[u], values[u + n]) for u in range(n)]
        return upper + lower

    def to_dict(self) -> Dict[str, object]:
        return self.base.to_dict()


@dataclass(frozen=True)
class OrientedEdge:
    """
    An edge together with a direction. `tail` is the vertex the edge leaves, `head` the vertex it enters.
    """

    edge_id: EdgeId
    direction: int
    tail: Vertex
    head: Vertex

    def reversed(self) -> OrientedEdge:
        return OrientedEdge(self.edge_id, 1 - self.direction, self.head, self.tail)


########################################################################################################################
# Weighted networks
########################################################################################################################


class WeightRole(enum.Enum):
    CAPACITY = "capacity"
    RESISTANCE = "resistance"


@dataclass(frozen=True)
class CapacitatedNetwork:
    """
    A graph with one exact rational weight per edge.

    With the capacity role weights are finite and non-negative, with the resistance role they are positive.

    Args:
        graph: the underlying graph (a `BunkbedGraph` for the reflection-symmetry predicate).
        weights: one weight per edge id; integers, `Fraction`s, floats or "p/q" strings.
        role: `WeightRole.CAPACITY` or `WeightRole.RESISTANCE`.
    """

    graph: BaseGraph
    weights: Tuple[Fraction, ...]
    role: WeightRole = WeightRole.CAPACITY

    def __post_init__(self):
        weights = tuple(_as_fraction(w) for w in self.weights)
        if len(weights) != self.graph.edge_count:
            raise ValueError("Expected {} weights, got {}".format(self.graph.edge_count, len(weights)))
        if self.role is WeightRole.CAPACITY and any(w < 0 for w in weights):
            raise ValueError("Capacities must be non-negative")
        if self.role is WeightRole.RESISTANCE and any(w <= 0 for w in weights):
            raise ValueError("Resistances must be positive")
        object.__setattr__(self, "weights", weights)

    @property
    def is_bunkbed(self) -> bool:
        return isinstance(self.graph, BunkbedGraph)

    def weight(self, u: Vertex, v: Vertex) -> Fraction:
        return self.weights[self.graph.edge_id(u, v)]

    def is_reflection_symmetric(self) -> bool:
        """
        True iff both horizontal copies of every base edge carry the same weight. Vertical weights are unconstrained.
        """
        if not self.is_bunkbed:
            raise TypeError("Reflection symmetry is only defined on bunkbed networks")
        return all(self.weights[e0] == self.weights[e1] for e0, e1 in self.graph.horizontal_pairs())

    def reflected(self) -> CapacitatedNetwork:
        """Network whose weights are transported by the reflection automorphism."""
        if not self.is_bunkbed:
            raise TypeError("Reflection is only defined on bunkbed networks")
        weights = [self.weights[self.graph.reflect_edge(i)] for i in range(self.graph.edge_count)]
        return CapacitatedNetwork(self.graph, tuple(weights), self.role)

    def as_array(self) -> np.ndarray:
        """Weights as a float array indexed by edge id."""
        return np.array([float(w) for w in self.weights], dtype=np.float64)


def _as_fraction(w: Union[RationalLike, float]) -> Fraction:
    if isinstance(w, float):
        return Fraction(w)
    return parse_rational(w)


########################################################################################################################
# Operations
########################################################################################################################


def build_base_graph(vertex_count: int, edge_list: Iterable[Sequence[int]]) -> BaseGraph:
    """
    Builds a normalized simple graph.

    Args:
        vertex_count: number of vertices.
        edge_list: unordered vertex pairs.

    Returns:
        BaseGraph

    Raises:
        MalformedEdge: out-of-range endpoint, self-loop or duplicate edge.
    """
    return BaseGraph(vertex_count, edge_list)


def build_bunkbed(base: BaseGraph) -> BunkbedGraph:
    """
    Returns:
        BunkbedGraph: the product `base x K2`, with `2|V|` vertices and `2|E| + |V|` edges.
    """
    return BunkbedGraph(base)


def is_cut_edge(base: BaseGraph, u: Vertex, v: Vertex) -> bool:
    """
    Whether deleting the edge `uv` disconnects `u` from `v`.

    Raises:
        NotAnEdge: if `uv` is not an edge of `base`.
    """
    if not base.has_edge(u, v):
        raise NotAnEdge("({}, {}) is not an edge".format(u, v))
    graph = nx.Graph(base)
    graph.remove_edge(u, v)
    return not nx.has_path(graph, u, v)
