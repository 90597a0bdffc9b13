"""
Self-avoiding walks on graphs and their five-class decomposition on bunkbed graphs.

For base vertices `u != v`, every self-avoiding walk from `u0` to `v_j` falls in exactly one class:

| class | target v0                                   | target v1                                   |
|-------|---------------------------------------------|---------------------------------------------|
| S1    | avoids v1                                   | ends with the vertical edge `e_v`           |
| S2    | ends with the vertical edge `e_v`           | avoids v0                                   |
| S3    | visits v1, avoids u1, does not end with e_v | starts with `e_u`, visits v0, no `e_v`      |
| S4    | starts with `e_u`, visits v1, no `e_v`      | visits v0, avoids u1, does not end with e_v |
| S5    | visits u1 and v1, uses neither `e_u` nor `e_v` (both visit orders) | visits u1 and v0, uses neither |

Classes S1-S4 are in explicit bijection across the two targets, so the totals differ exactly by S5.

Enumeration is depth-first with neighbors in ascending id order, which fixes the order walks are produced in.
"""
from __future__ import annotations

import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from bunkbed_lab.data.graph_families import ladder
from bunkbed_lab.exceptions import (
    OutOfRange,
    SameSourceSink,
    TimeBudgetExceeded,
    WalkLimitExceeded,
    WrongClass,
    WrongEndpoints,
)
from bunkbed_lab.graphcore import BaseGraph, BunkbedGraph, Vertex, build_bunkbed, is_cut_edge

log = logging.getLogger(__name__)

DEFAULT_MAX_WALKS = 1_000_000
_DEADLINE_CHECK_EVERY = 4096

Adjacency = Tuple[Tuple[int, ...], ...]

########################################################################################################################
# Types
########################################################################################################################


class SawLabel(enum.IntEnum):
    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5


@dataclass(frozen=True)
class SawClass:
    label: SawLabel
    parity: int


@dataclass(frozen=True)
class SawWalk:
    """
    A self-avoiding walk `(w0, e1, w1, ..., en, wn)`, stored as its vertex and edge sequences.
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("A walk between distinct endpoints has at least one step")
        if len(self.edges) != len(self.vertices) - 1:
            expected = len(self.vertices) - 1
            raise ValueError("A walk with {} vertices needs {} edges".format(len(self.vertices), expected))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("Walk {} revisits a vertex".format(self.vertices))

    @classmethod
    def from_vertices(cls, graph: BaseGraph, vertices: Sequence[Vertex]) -> SawWalk:
        """
        Raises:
            NotAnEdge: if two consecutive vertices are not adjacent.
        """
        vertices = tuple(vertices)
        return cls(vertices, tuple(graph.edge_id(a, b) for a, b in zip(vertices, vertices[1:])))

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)

    def reversed(self) -> SawWalk:
        return SawWalk(self.vertices[::-1], self.edges[::-1])

    def to_dict(self) -> Dict[str, List[int]]:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


class SawCount(NamedTuple):
    count: int
    walks: Optional[Tuple[SawWalk, ...]]


@dataclass(frozen=True)
class SawCensus:
    """
    Per-class walk counts from `u0` to `v0` and to `v1` on `G x K2`.

    Attributes:
        u, v: base vertices.
        to_v0: counts of S1..S5 among walks `u0 -> v0`.
        to_v1: counts of S1..S5 among walks `u0 -> v1`.
        walks: stored walks per class, when requested.
    """

    u: Vertex
    v: Vertex
    to_v0: Tuple[int, int, int, int, int]
    to_v1: Tuple[int, int, int, int, int]
    walks: Optional[Dict[SawClass, Tuple[SawWalk, ...]]] = None

    @property
    def total_v0(self) -> int:
        return sum(self.to_v0)

    @property
    def total_v1(self) -> int:
        return sum(self.to_v1)

    @property
    def s5(self) -> Tuple[int, int]:
        return self.to_v0[4], self.to_v1[4]

    def count(self, label: int, parity: int) -> int:
        return (self.to_v0 if parity == 0 else self.to_v1)[int(label) - 1]

    def paired_classes_agree(self) -> bool:
        """Whether S1..S4 have equal counts across the two targets."""
        return self.to_v0[:4] == self.to_v1[:4]

    def to_dict(self) -> Dict[str, object]:
        return {
            "u": self.u,
            "v": self.v,
            "to_v0": {label.name: str(self.to_v0[label - 1]) for label in SawLabel},
            "to_v1": {label.name: str(self.to_v1[label - 1]) for label in SawLabel},
            "total_v0": str(self.total_v0),
            "total_v1": str(self.total_v1),
        }


class BijectionCheck(NamedTuple):
    injective: bool
    surjective: bool
    class_preserving: bool
    inverse_composes: bool

    @property
    def ok(self) -> bool:
        return all(self)


class LadderPairReport(NamedTuple):
    u: Vertex
    v: Vertex
    total_v0: int
    total_v1: int
    s5_v0: int
    s5_v1: int
    predicted: str
    observed: str
    formula: Tuple[int, int]

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed and self.formula == (self.s5_v0, self.s5_v1)


########################################################################################################################
# Enumeration kernels
########################################################################################################################


def _extend(adjacency: Adjacency, prefix: Sequence[Vertex], target: Vertex, deadline: Optional[float]) -> Iterator:
    """
    Self-avoiding continuations of `prefix` that end at `target`, in ascending neighbor order.

    Yields the live path list; callers copy it when they keep it.
    """
    path = list(prefix)
    if path[-1] == target:
        yield path
        return

    on_path = [False] * len(adjacency)
    for w in path:
        on_path[w] = True
    stack = [iter(adjacency[path[-1]])]
    steps = 0
    while stack:
        for w in stack[-1]:
            if on_path[w]:
                continue
            steps += 1
            if deadline is not None and steps % _DEADLINE_CHECK_EVERY == 0 and time.monotonic() > deadline:
                raise TimeBudgetExceeded("Walk enumeration ran past its deadline")
            path.append(w)
            if w == target:
                yield path
                path.pop()
                continue
            on_path[w] = True
            stack.append(iter(adjacency[w]))
            break
        else:
            stack.pop()
            if len(path) > len(prefix):
                on_path[path.pop()] = False


def _count_branch(
    adjacency: Adjacency,
    prefix: Tuple[Vertex, ...],
    target: Vertex,
    deadline: Optional[float],
    limit: Optional[int],
) -> Tuple[int, List[Tuple[Vertex, ...]]]:
    """`limit` is the number of walks the branch may still store, None when walks are not kept."""
    count, walks = 0, []
    for path in _extend(adjacency, prefix, target, deadline):
        count += 1
        if limit is not None:
            if count > limit:
                raise WalkLimitExceeded("More walks than the {} left to store".format(limit))
            walks.append(tuple(path))
    return count, walks


def _label(path: Sequence[Vertex], u1: Vertex, other: Vertex, parity: int) -> int:
    """
    Class label of a walk from u0 to `v_parity`; `other` is `v_(1-parity)`.
    """
    via_u1 = u1 in path
    via_other = other in path
    first_is_eu = path[1] == u1
    last_is_ev = path[-2] == other
    if parity == 0:
        if not via_other:
            return 1
        if last_is_ev:
            return 2
        if not via_u1:
            return 3
        if first_is_eu:
            return 4
        return 5
    if last_is_ev:
        return 1
    if not via_other:
        return 2
    if first_is_eu:
        return 3
    if not via_u1:
        return 4
    return 5


def _census_branch(
    adjacency: Adjacency,
    prefix: Tuple[Vertex, ...],
    u1: Vertex,
    v0: Vertex,
    v1: Vertex,
    deadline: Optional[float],
    limit: Optional[int],
) -> Tuple[List[int], List[int], List[Tuple[int, Tuple[Vertex, ...]]], List[Tuple[int, Tuple[Vertex, ...]]]]:
    counts = ([0] * 5, [0] * 5)
    walks = ([], [])
    stored = 0
    for parity, target, other in ((0, v0, v1), (1, v1, v0)):
        for path in _extend(adjacency, prefix, target, deadline):
            label = _label(path, u1, other, parity)
            counts[parity][label - 1] += 1
            if limit is not None:
                stored += 1
                if stored > limit:
                    raise WalkLimitExceeded("More walks than the {} left to store".format(limit))
                walks[parity].append((label, tuple(path)))
    return counts[0], counts[1], walks[0], walks[1]


def _run_branches(
    kernel: Callable, arguments: List[tuple], workers: int, limit: Optional[int], stored: Callable[[tuple], int]
) -> List:
    """
    Runs one kernel call per first step, returning results in branch order.

    The kernel takes the number of walks it may still store as its last argument. Sequential branches share `limit`;
    parallel branches each get all of it and the total is checked once they are merged.
    """
    if workers <= 1 or len(arguments) <= 1:
        results = []
        for args in arguments:
            results.append(kernel(*args, limit))
            if limit is not None:
                limit -= stored(results[-1])
        return results

    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        results = list(pool.map(kernel, *zip(*arguments), [limit] * len(arguments)))
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
    total = sum(stored(r) for r in results)
    if limit is not None and total > limit:
        raise WalkLimitExceeded("{} walks exceed the storage limit of {}".format(total, limit))
    return results


def _deadline(time_limit: Optional[float]) -> Optional[float]:
    return None if time_limit is None else time.monotonic() + time_limit


def _adjacency(graph: BaseGraph) -> Adjacency:
    return tuple(graph.sorted_neighbors(u) for u in range(graph.vertex_count))


########################################################################################################################
# Operations
########################################################################################################################


def count_saw(
    graph: BaseGraph,
    a: Vertex,
    b: Vertex,
    store_walks: bool = False,
    max_walks: int = DEFAULT_MAX_WALKS,
    workers: int = 1,
    time_limit: Optional[float] = None,
) -> SawCount:
    """
    Counts self-avoiding walks from `a` to `b` by depth-first backtracking.

    The search forest is split by the first step out of `a`; branches may run in separate processes and are merged
    in branch order, so counts and stored walks do not depend on `workers`.

    Args:
        graph: any graph.
        a: start vertex.
        b: end vertex, different from `a`.
        store_walks: whether to keep the walks (in enumeration order).
        max_walks: largest number of walks that may be stored; enumeration stops as soon as it is passed.
        workers: number of processes.
        time_limit: wall-clock limit in seconds.

    Returns:
        SawCount: `(count, walks)`, walks being None unless stored.

    Raises:
        WalkLimitExceeded: if more than `max_walks` walks would be stored.
        TimeBudgetExceeded: if `time_limit` runs out.
    """
    if a == b:
        raise SameSourceSink("Walk endpoints coincide at {}".format(a))
    adjacency = _adjacency(graph)
    deadline = _deadline(time_limit)
    arguments = [(adjacency, (a, w), b, deadline) for w in adjacency[a]]
    limit = max_walks if store_walks else None
    results = _run_branches(_count_branch, arguments, workers, limit, lambda r: len(r[1]))

    count = sum(r[0] for r in results)
    log.debug("%d self-avoiding walks from %d to %d over %d branch(es)", count, a, b, len(results))
    if not store_walks:
        return SawCount(count, None)
    walks = tuple(SawWalk.from_vertices(graph, path) for r in results for path in r[1])
    return SawCount(count, walks)


def classify_walk(walk: SawWalk, u: Vertex, v: Vertex, bunkbed: BunkbedGraph) -> SawClass:
    """
    Class of a walk from `u0` to `v0` or `v1`.

    Raises:
        WrongEndpoints: if the walk does not start at `u0` or does not end at `v0` or `v1`.
    """
    u0, u1 = bunkbed.vertex(u, 0), bunkbed.vertex(u, 1)
    v0, v1 = bunkbed.vertex(v, 0), bunkbed.vertex(v, 1)
    if walk.start != u0 or walk.end not in (v0, v1):
        raise WrongEndpoints("Walk {} does not run from {} to {} or {}".format(walk.vertices, u0, v0, v1))
    parity = 0 if walk.end == v0 else 1
    other = v1 if parity == 0 else v0
    return SawClass(SawLabel(_label(walk.vertices, u1, other, parity)), parity)


def census(
    base: BaseGraph,
    u: Vertex,
    v: Vertex,
    store_walks: bool = False,
    max_walks: int = DEFAULT_MAX_WALKS,
    workers: int = 1,
    time_limit: Optional[float] = None,
) -> SawCensus:
    """
    Classifies every self-avoiding walk from `u0` to `v0` and from `u0` to `v1` on `base x K2`.

    Args:
        base: the base graph G.
        u: base vertex of the start.
        v: base vertex of the end, different from `u`.
        store_walks: whether to keep the walks of every class.
        max_walks: largest number of walks that may be stored; enumeration stops as soon as it is passed.
        workers: number of processes (branches split by first step).
        time_limit: wall-clock limit in seconds.

    Returns:
        SawCensus

    Raises:
        WalkLimitExceeded: if more than `max_walks` walks would be stored.
        TimeBudgetExceeded: if `time_limit` runs out.
    """
    if u == v:
        raise SameSourceSink("u and v are both {}".format(u))
    bunkbed = build_bunkbed(base)
    adjacency = _adjacency(bunkbed)
    u0, u1 = bunkbed.vertex(u, 0), bunkbed.vertex(u, 1)
    v0, v1 = bunkbed.vertex(v, 0), bunkbed.vertex(v, 1)
    deadline = _deadline(time_limit)
    arguments = [(adjacency, (u0, w), u1, v0, v1, deadline) for w in adjacency[u0]]
    limit = max_walks if store_walks else None
    results = _run_branches(_census_branch, arguments, workers, limit, lambda r: len(r[2]) + len(r[3]))

    to_v0 = tuple(sum(r[0][i] for r in results) for i in range(5))
    to_v1 = tuple(sum(r[1][i] for r in results) for i in range(5))
    log.debug("Census of (%d, %d): to v0 %s, to v1 %s", u, v, to_v0, to_v1)

    walks = None
    if store_walks:
        grouped: Dict[SawClass, List[SawWalk]] = {
            SawClass(label, parity): [] for parity in (0, 1) for label in SawLabel
        }
        for r in results:
            for parity, labelled in ((0, r[2]), (1, r[3])):
                for label, path in labelled:
                    grouped[SawClass(SawLabel(label), parity)].append(SawWalk.from_vertices(bunkbed, path))
        walks = {key: tuple(value) for key, value in grouped.items()}
    return SawCensus(u, v, to_v0, to_v1, walks)


########################################################################################################################
# Bijections
########################################################################################################################


def reflect_walk(bunkbed: BunkbedGraph, walk: SawWalk) -> SawWalk:
    """Image of a walk under the reflection `(w, i) -> (w, 1 - i)`."""
    return SawWalk(
        tuple(bunkbed.reflect_vertex(w) for w in walk.vertices),
        tuple(bunkbed.reflect_edge(e) for e in walk.edges),
    )


def bijection_map(i: int, walk: SawWalk, u: Vertex, v: Vertex, bunkbed: BunkbedGraph) -> SawWalk:
    """
    Maps a walk of class `Si(u0, v0)` to its partner in `Si(u0, v1)`:

    * i = 1: append the vertical edge `e_v`,
    * i = 2: delete the final step `e_v`,
    * i = 3: reflect, then prepend the vertical edge `e_u`,
    * i = 4: delete the initial step `e_u`, then reflect.

    Raises:
        WrongClass: if the walk is not in `Si(u0, v0)`.
    """
    _expect_class(i, 0, walk, u, v, bunkbed)
    u0, v1 = bunkbed.vertex(u, 0), bunkbed.vertex(v, 1)
    if i == 1:
        image = SawWalk.from_vertices(bunkbed, walk.vertices + (v1,))
    elif i == 2:
        image = SawWalk.from_vertices(bunkbed, walk.vertices[:-1])
    elif i == 3:
        image = SawWalk.from_vertices(bunkbed, (u0,) + reflect_walk(bunkbed, walk).vertices)
    else:
        image = reflect_walk(bunkbed, SawWalk.from_vertices(bunkbed, walk.vertices[1:]))
    assert classify_walk(image, u, v, bunkbed) == SawClass(SawLabel(i), 1)
    return image


def inverse_bijection_map(i: int, walk: SawWalk, u: Vertex, v: Vertex, bunkbed: BunkbedGraph) -> SawWalk:
    """
    Inverse of `bijection_map`, from `Si(u0, v1)` back to `Si(u0, v0)`.

    Raises:
        WrongClass: if the walk is not in `Si(u0, v1)`.
    """
    _expect_class(i, 1, walk, u, v, bunkbed)
    u0, v0 = bunkbed.vertex(u, 0), bunkbed.vertex(v, 0)
    if i == 1:
        image = SawWalk.from_vertices(bunkbed, walk.vertices[:-1])
    elif i == 2:
        image = SawWalk.from_vertices(bunkbed, walk.vertices + (v0,))
    elif i == 3:
        image = reflect_walk(bunkbed, SawWalk.from_vertices(bunkbed, walk.vertices[1:]))
    else:
        image = SawWalk.from_vertices(bunkbed, (u0,) + reflect_walk(bunkbed, walk).vertices)
    assert classify_walk(image, u, v, bunkbed) == SawClass(SawLabel(i), 0)
    return image


def _expect_class(i: int, parity: int, walk: SawWalk, u: Vertex, v: Vertex, bunkbed: BunkbedGraph) -> None:
    if i not in (1, 2, 3, 4):
        raise OutOfRange("Bijections exist for classes 1 to 4, got {}".format(i))
    try:
        found = classify_walk(walk, u, v, bunkbed)
    except WrongEndpoints as error:
        raise WrongClass(str(error)) from None
    if found != SawClass(SawLabel(i), parity):
        raise WrongClass("Walk {} is in S{} towards v{}, expected S{} towards v{}".format(
            walk.vertices, int(found.label), found.parity, i, parity
        ))


def verify_bijections(census_result: SawCensus, bunkbed: BunkbedGraph) -> Dict[int, BijectionCheck]:
    """
    Applies the four maps to every stored walk and checks they are bijections between the stored classes.

    Args:
        census_result: a census computed with `store_walks=True`.
        bunkbed: the bunkbed graph the census ran on.
    """
    if census_result.walks is None:
        raise ValueError("The census was computed without stored walks")
    u, v = census_result.u, census_result.v
    checks = {}
    for i in (1, 2, 3, 4):
        sources = census_result.walks[SawClass(SawLabel(i), 0)]
        targets = census_result.walks[SawClass(SawLabel(i), 1)]
        images = [bijection_map(i, walk, u, v, bunkbed) for walk in sources]
        checks[i] = BijectionCheck(
            injective=len(set(images)) == len(images),
            surjective=set(images) == set(targets),
            class_preserving=all(classify_walk(w, u, v, bunkbed) == SawClass(SawLabel(i), 1) for w in images),
            inverse_composes=all(
                inverse_bijection_map(i, image, u, v, bunkbed) == walk for walk, image in zip(sources, images)
            ),
        )
    return checks


def remark_prediction(base: BaseGraph, u: Vertex, v: Vertex) -> Optional[str]:
    """
    Relation between `|S(u0, v0)|` and `|S(u0, v1)|` forced by the degrees of u and v:

    * "=" when `min(deg u, deg v) = 1` (S5 is empty for both targets),
    * ">" when `uv` is a cut-edge and both degrees are at least 2,
    * None otherwise.
    """
    if min(base.degree(u), base.degree(v)) == 1:
        return "="
    if base.has_edge(u, v) and is_cut_edge(base, u, v):
        return ">"
    return None


########################################################################################################################
# Ladders
########################################################################################################################


def ladder_side_walks(m: int, i: int) -> int:
    """
    `f_i(m)`: number of self-avoiding walks from `(0, 0)` to `(m - 2, i)` on the ladder `P_(m-2) x K2`.
    """
    if m < 3 or i not in (0, 1):
        raise OutOfRange("f_i(m) needs m >= 3 and i in {{0, 1}}, got m={}, i={}".format(m, i))
    graph = ladder(m - 2)
    return count_saw(graph, graph.vertex(0, 0), graph.vertex(m - 2, i)).count


def ladder_s5_adjacent(n: int, k: int) -> int:
    """
    `|S5(u0, v0)| = k (n - k - 1)` on `P_n x K2` for the interior adjacent pair `u = k`, `v = k + 1`.
    `|S5(u0, v1)|` is 0 for such pairs.
    """
    if not 1 <= k <= n - 2:
        raise OutOfRange("Interior adjacent pairs need 1 <= k <= n - 2, got n={}, k={}".format(n, k))
    return k * (n - k - 1)


def ladder_s5_distant(n: int, k: int, m: int) -> Tuple[int, int]:
    """
    `(|S5(u0, v0)|, |S5(u0, v1)|)` on `P_n x K2` for the interior pair `u = k`, `v = k + m`, `m >= 2`.

    Both equal `k (n - k - 2)` when `m = 2`, and `k (n - k - m) f_i(m)` otherwise.
    """
    if m < 2 or k < 1 or k + m > n - 1:
        raise OutOfRange("Interior pairs need m >= 2 and 1 <= k < k + m <= n - 1, got n={}, k={}, m={}".format(n, k, m))
    if m == 2:
        count = k * (n - k - 2)
        return count, count
    factor = k * (n - k - m)
    return factor * ladder_side_walks(m, 0), factor * ladder_side_walks(m, 1)


def ladder_s5_formula(n: int, u: Vertex, v: Vertex) -> Tuple[int, int]:
    """
    S5 counts predicted for any pair of distinct vertices of `P_n x K2`. Pairs with `u > v` are mirrored by
    `i -> n - i`.
    """
    if u > v:
        u, v = n - u, n - v
    if u == 0 or v == n:
        return 0, 0
    if v == u + 1:
        return ladder_s5_adjacent(n, u), 0
    return ladder_s5_distant(n, u, v - u)


def ladder_prediction(n: int, u: Vertex, v: Vertex) -> str:
    """
    Relation between the totals towards v0 and v1 on `P_n x K2`: ">" for adjacent pairs with neither vertex an
    endpoint of the path, "=" otherwise.
    """
    if n < 2:
        raise OutOfRange("Ladders are checked from n = 2, got {}".format(n))
    if not (0 <= u <= n and 0 <= v <= n):
        raise OutOfRange("Pair ({}, {}) is not in P_{}".format(u, v, n))
    interior = 0 < u < n and 0 < v < n
    return ">" if interior and abs(u - v) == 1 else "="


def ladder_pair_report(
    n: int, u: Vertex, v: Vertex, workers: int = 1, time_limit: Optional[float] = None
) -> LadderPairReport:
    """
    Census of one ordered pair on `P_n x K2` next to the case analysis: the totals differ (towards v0) exactly when u
    and v are adjacent and neither is an endpoint of the path, and the S5 counts follow `ladder_s5_formula`.
    """
    predicted = ladder_prediction(n, u, v)
    result = census(ladder(n).base, u, v, workers=workers, time_limit=time_limit)
    t0, t1 = result.total_v0, result.total_v1
    observed = ">" if t0 > t1 else ("=" if t0 == t1 else "<")
    report = LadderPairReport(
        u, v, t0, t1, result.s5[0], result.s5[1], predicted, observed, ladder_s5_formula(n, u, v)
    )
    if not report.agrees:
        log.error("Ladder n=%d pair (%d, %d) does not match the case analysis: %s", n, u, v, report)
    return report


def verify_ladder_proposition(n: int, workers: int = 1) -> List[LadderPairReport]:
    """Runs `ladder_pair_report` on every ordered pair of distinct vertices of `P_n x K2`."""
    return [ladder_pair_report(n, u, v, workers) for u in range(n + 1) for v in range(n + 1) if u != v]
