"""
Exact maximum flow and minimum cut over rational capacities.

Flows on an undirected network are stored per edge id, oriented from the smaller endpoint to the larger one, so that
`theta(e->) = -theta(e<-)` holds by construction.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import FrozenSet, List, NamedTuple, Sequence, Tuple

from bunkbed_lab.exceptions import AsymmetricCapacities, OutOfRange, SameSourceSink
from bunkbed_lab.graphcore import (
    BaseGraph,
    BunkbedGraph,
    CapacitatedNetwork,
    EdgeId,
    OrientedEdge,
    Vertex,
    WeightRole,
    build_bunkbed,
)

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_VERTICES = 16

########################################################################################################################
# Types
########################################################################################################################


@dataclass(frozen=True)
class FlowAssignment:
    """
    An antisymmetric edge function `theta` on a graph, with source set A and sink set Z.

    `values[i]` is the flow along edge `i` from `edge_list[i][0]` to `edge_list[i][1]`. Values may be rationals (exact
    flows) or floats (p-resistance flows).
    """

    graph: BaseGraph
    values: Tuple
    sources: FrozenSet[Vertex] = field(default_factory=frozenset)
    sinks: FrozenSet[Vertex] = field(default_factory=frozenset)

    def __post_init__(self):
        if len(self.values) != self.graph.edge_count:
            raise ValueError("Expected {} edge values, got {}".format(self.graph.edge_count, len(self.values)))
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "sources", frozenset(self.sources))
        object.__setattr__(self, "sinks", frozenset(self.sinks))

    def __call__(self, oriented: OrientedEdge):
        """`theta` evaluated on an oriented edge."""
        value = self.values[oriented.edge_id]
        return value if oriented.direction == 0 else -value

    def divergence(self, x: Vertex):
        """`(d* theta)(x)`, the net flow leaving `x`."""
        total = 0
        for y in self.graph.sorted_neighbors(x):
            total = total + self(self.graph.oriented_edge(self.graph.edge_id(x, y), 0 if x < y else 1))
        return total

    @property
    def strength(self):
        """Net flow leaving the source set."""
        return sum((self.divergence(a) for a in sorted(self.sources)), 0)

    def conservation_residual(self) -> float:
        """Largest `|d* theta|` over vertices outside A and Z."""
        terminals = self.sources | self.sinks
        residuals = [abs(self.divergence(x)) for x in range(self.graph.vertex_count) if x not in terminals]
        return max(residuals, default=0)

    def is_conservative(self, tol=0) -> bool:
        """Divergence vanishes outside A and Z, is non-negative on A and non-positive on Z (up to `tol`)."""
        for x in range(self.graph.vertex_count):
            d = self.divergence(x)
            if x in self.sources:
                if d < -tol:
                    return False
            elif x in self.sinks:
                if d > tol:
                    return False
            elif abs(d) > tol:
                return False
        return True

    def is_admissible(self, network: CapacitatedNetwork) -> bool:
        """`|theta(e)| <= c(e)` on every edge."""
        return all(abs(value) <= capacity for value, capacity in zip(self.values, network.weights))


@dataclass(frozen=True)
class CutCertificate:
    """
    A vertex bipartition `(S, V \\ S)` with the source in S and the sink outside, its crossing edges and its value.
    """

    source_side: FrozenSet[Vertex]
    crossing_edges: Tuple[EdgeId, ...]
    value: Fraction

    @classmethod
    def from_side(cls, network: CapacitatedNetwork, source_side) -> CutCertificate:
        source_side = frozenset(source_side)
        crossing = tuple(
            idx for idx, (u, v) in enumerate(network.graph.edge_list) if (u in source_side) != (v in source_side)
        )
        value = sum((network.weights[idx] for idx in crossing), Fraction(0))
        return cls(source_side, crossing, value)


class MaxFlowResult(NamedTuple):
    value: Fraction
    flow: FlowAssignment
    cut: CutCertificate


class FlowInequalityReport(NamedTuple):
    mf00: Fraction
    mf01: Fraction
    holds: bool


class RearrangementValues(NamedTuple):
    before: Fraction
    after: Fraction

    @property
    def holds(self) -> bool:
        return self.after <= self.before


########################################################################################################################
# Dinic
########################################################################################################################


class _Dinic:
    """
    Blocking-flow solver on the symmetric arc network of an undirected graph.

    Edge `i = uv` (u < v) gives arcs `2i` (u -> v) and `2i + 1` (v -> u), both of capacity `c_i`. With `f_i` the flow
    from u to v, their residual capacities are `c_i - f_i` and `c_i + f_i`.
    """

    def __init__(self, network: CapacitatedNetwork):
        graph = network.graph
        self.edge_list = graph.edge_list
        self.capacity = network.weights
        self.flow = [Fraction(0)] * graph.edge_count
        self.out_arcs: List[List[int]] = [[] for _ in range(graph.vertex_count)]
        for idx, (u, v) in enumerate(self.edge_list):
            self.out_arcs[u].append(2 * idx)
            self.out_arcs[v].append(2 * idx + 1)

    def head(self, arc: int) -> Vertex:
        u, v = self.edge_list[arc // 2]
        return v if arc % 2 == 0 else u

    def residual(self, arc: int) -> Fraction:
        idx = arc // 2
        if arc % 2 == 0:
            return self.capacity[idx] - self.flow[idx]
        return self.capacity[idx] + self.flow[idx]

    def push(self, arc: int, amount: Fraction) -> None:
        idx = arc // 2
        self.flow[idx] += amount if arc % 2 == 0 else -amount

    def levels(self, source: Vertex) -> List[int]:
        """BFS distances from the source in the residual network, -1 when unreachable."""
        level = [-1] * len(self.out_arcs)
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for arc in self.out_arcs[u]:
                w = self.head(arc)
                if level[w] < 0 and self.residual(arc) > 0:
                    level[w] = level[u] + 1
                    queue.append(w)
        return level

    def augment(self, u: Vertex, sink: Vertex, pushed, level: List[int], pointer: List[int]) -> Fraction:
        if u == sink:
            return pushed
        arcs = self.out_arcs[u]
        while pointer[u] < len(arcs):
            arc = arcs[pointer[u]]
            w = self.head(arc)
            residual = self.residual(arc)
            if level[w] == level[u] + 1 and residual > 0:
                bottleneck = residual if pushed is None else min(pushed, residual)
                sent = self.augment(w, sink, bottleneck, level, pointer)
                if sent > 0:
                    self.push(arc, sent)
                    return sent
            pointer[u] += 1
        return Fraction(0)

    def run(self, source: Vertex, sink: Vertex) -> Fraction:
        value = Fraction(0)
        phases = 0
        while True:
            level = self.levels(source)
            if level[sink] < 0:
                break
            phases += 1
            pointer = [0] * len(self.out_arcs)
            # None stands for an unbounded amount at the source
            while (sent := self.augment(source, sink, None, level, pointer)) > 0:
                value += sent
        log.debug("Max flow %s after %d phase(s)", value, phases)
        return value


########################################################################################################################
# Operations
########################################################################################################################


def max_flow(network: CapacitatedNetwork, s: Vertex, t: Vertex) -> MaxFlowResult:
    """
    Maximum flow from `s` to `t` with Dinic's blocking-flow algorithm, in exact rational arithmetic.

    The returned cut is the set of vertices reachable from `s` in the final residual network, i.e. the minimum cut
    whose source side is smallest. Zero-capacity edges are kept but never carry flow.

    Args:
        network: a network with the capacity role.
        s: source vertex.
        t: sink vertex.

    Returns:
        MaxFlowResult: `(value, flow, cut)` with `value == flow.strength == cut.value`.

    Raises:
        SameSourceSink: if `s == t`.
        OutOfRange: if `s` or `t` is not a vertex.
    """
    if network.role is not WeightRole.CAPACITY:
        raise ValueError("max_flow needs a network with the capacity role")
    if s == t:
        raise SameSourceSink("Source and sink are both {}".format(s))
    if not (0 <= s < network.graph.vertex_count and 0 <= t < network.graph.vertex_count):
        raise OutOfRange("Source {} or sink {} is not a vertex".format(s, t))

    solver = _Dinic(network)
    value = solver.run(s, t)
    flow = FlowAssignment(network.graph, tuple(solver.flow), {s}, {t})

    level = solver.levels(s)
    cut = CutCertificate.from_side(network, (u for u, d in enumerate(level) if d >= 0))

    # Strong duality
    assert cut.value == value and flow.strength == value
    return MaxFlowResult(value, flow, cut)


def potential_form_value(network: CapacitatedNetwork, f: Sequence) -> Fraction:
    """
    `sum_{e=uv} c(e) |f(u) - f(v)|`. Exact when `f` is rational.

    Args:
        network: a network with the capacity role.
        f: vertex function indexed by vertex id.
    """
    if len(f) != network.graph.vertex_count:
        raise ValueError("Expected {} values, got {}".format(network.graph.vertex_count, len(f)))
    return sum((c * abs(f[u] - f[v]) for c, (u, v) in zip(network.weights, network.graph.edge_list)), Fraction(0))


def min_cut_brute_force(network: CapacitatedNetwork, s: Vertex, t: Vertex) -> CutCertificate:
    """
    Minimum cut by enumeration of all `2^(n-2)` source sides. First minimum in enumeration order wins.
    """
    others = _free_vertices(network, s, t)
    best = None
    for bits in product((False, True), repeat=len(others)):
        side = {s} | {u for u, inside in zip(others, bits) if inside}
        cut = CutCertificate.from_side(network, side)
        if best is None or cut.value < best.value:
            best = cut
    return best


def min_binary_potential_value(network: CapacitatedNetwork, s: Vertex, t: Vertex) -> Fraction:
    """
    Minimum of `potential_form_value` over all {0, 1}-valued `f` with `f(s) = 1` and `f(t) = 0`.
    """
    others = _free_vertices(network, s, t)
    best = None
    for bits in product((0, 1), repeat=len(others)):
        f = [0] * network.graph.vertex_count
        f[s] = 1
        for u, bit in zip(others, bits):
            f[u] = bit
        value = potential_form_value(network, f)
        if best is None or value < best:
            best = value
    return best


def _free_vertices(network: CapacitatedNetwork, s: Vertex, t: Vertex) -> List[Vertex]:
    if s == t:
        raise SameSourceSink("Source and sink are both {}".format(s))
    if network.graph.vertex_count > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError("Exhaustive enumeration is limited to {} vertices".format(BRUTE_FORCE_MAX_VERTICES))
    return [u for u in range(network.graph.vertex_count) if u not in (s, t)]


def verify_flow_inequality(base: BaseGraph, weights: Sequence, x: Vertex, y: Vertex) -> FlowInequalityReport:
    """
    Compares `MF(x0, y0)` with `MF(x0, y1)` on `base x K2` with reflection-symmetric capacities.

    Args:
        base: the base graph G.
        weights: capacities indexed by bunkbed edge id (see `BunkbedGraph.symmetric_weights`).
        x: base vertex of the source.
        y: base vertex of the sink.

    Returns:
        FlowInequalityReport: `(mf00, mf01, holds)` with `holds = mf00 >= mf01`, compared exactly.

    Raises:
        AsymmetricCapacities: if the horizontal capacities are not reflection-symmetric.
        SameSourceSink: if `x == y`.
    """
    if x == y:
        raise SameSourceSink("x and y are both {}".format(x))
    bunkbed = build_bunkbed(base)
    network = CapacitatedNetwork(bunkbed, tuple(weights), WeightRole.CAPACITY)
    if not network.is_reflection_symmetric():
        raise AsymmetricCapacities("Horizontal capacities differ between the two layers")

    mf00 = max_flow(network, bunkbed.vertex(x, 0), bunkbed.vertex(y, 0)).value
    mf01 = max_flow(network, bunkbed.vertex(x, 0), bunkbed.vertex(y, 1)).value
    holds = mf00 >= mf01
    if not holds:
        log.error("Flow inequality violated for x=%d, y=%d: MF00=%s < MF01=%s", x, y, mf00, mf01)
    return FlowInequalityReport(mf00, mf01, holds)


def rearrangement_value_inequality(
    network: CapacitatedNetwork, f: Sequence, x: Vertex, y: Vertex
) -> RearrangementValues:
    """
    Potential-form value of `f` before and after the min/max layer rearrangement.

    With `f(x0) = 1` and `f(y0) = 0`, the rearranged function takes the value 1 at `x0` and 0 at `y1`.

    Args:
        network: a bunkbed network with reflection-symmetric capacities.
        f: vertex function indexed by bunkbed vertex id.
        x: base vertex of the source.
        y: base vertex of the sink.

    Returns:
        RearrangementValues: `(before, after)`; `after <= before` on every symmetric network.
    """
    bunkbed = network.graph
    if not isinstance(bunkbed, BunkbedGraph):
        raise TypeError("rearrangement_value_inequality needs a bunkbed network")
    for u in (x, y):
        if not 0 <= u < bunkbed.n:
            raise ValueError("{} is not a base vertex".format(u))
    h = bunkbed.rearrange_layers(f)
    return RearrangementValues(potential_form_value(network, f), potential_form_value(network, h))
