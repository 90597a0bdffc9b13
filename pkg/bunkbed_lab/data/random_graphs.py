import logging
from fractions import Fraction
from itertools import combinations
from typing import List, Optional

import numpy as np

from bunkbed_lab.exceptions import GenerationExhausted
from bunkbed_lab.graphcore import BaseGraph, BunkbedGraph
from bunkbed_lab.utils import make_rng

log = logging.getLogger(__name__)

DEFAULT_MAX_RETRIES = 1000

########################################################################################################################
# Random graphs
########################################################################################################################


def random_connected_graph(
    n: int, edge_probability: float, seed: int, max_retries: int = DEFAULT_MAX_RETRIES
) -> BaseGraph:
    """
    Samples a connected simple graph on `n` vertices, deterministically given `seed`.

    Each attempt draws one uniform number per vertex pair, pairs taken in lexicographic order, and keeps the pair as an
    edge when the draw is below `edge_probability`. Attempts are repeated until the graph is connected. Numbers come
    from the counter-based Philox generator seeded with `seed` (see `bunkbed_lab.utils.make_rng`).

    Args:
        n: number of vertices, at least 2.
        edge_probability: probability in (0, 1] of keeping each pair.
        seed: non-negative seed.
        max_retries: number of attempts before giving up.

    Returns:
        BaseGraph

    Raises:
        GenerationExhausted: if no connected graph was drawn within `max_retries` attempts.
    """
    return sample_connected_graph(make_rng(seed), n, edge_probability, max_retries=max_retries)


def sample_connected_graph(
    rng: np.random.Generator, n: int, edge_probability: float, max_retries: int = DEFAULT_MAX_RETRIES
) -> BaseGraph:
    """
    Same as `random_connected_graph`, drawing from an existing generator.
    """
    if n < 2:
        raise ValueError("A random connected graph needs n >= 2, got {}".format(n))
    if not 0 < edge_probability <= 1:
        raise ValueError("edge_probability must lie in (0, 1], got {}".format(edge_probability))

    pairs = list(combinations(range(n), 2))
    for attempt in range(max_retries):
        draws = rng.random(len(pairs))
        graph = BaseGraph(n, [pair for pair, draw in zip(pairs, draws) if draw < edge_probability])
        if graph.is_connected:
            log.debug("Connected graph on %d vertices after %d attempt(s)", n, attempt + 1)
            return graph

    raise GenerationExhausted(
        "No connected graph on {} vertices with edge probability {} after {} attempts".format(
            n, edge_probability, max_retries
        )
    )


########################################################################################################################
# Random weights
########################################################################################################################


def random_rationals(
    rng: np.random.Generator, size: int, max_numerator: int = 10, max_denominator: int = 6, allow_zero: bool = False
) -> List[Fraction]:
    """
    Draws `size` rationals `a / b` with `a` uniform in `[0 or 1, max_numerator]` and `b` uniform in
    `[1, max_denominator]`.
    """
    numerators = rng.integers(0 if allow_zero else 1, max_numerator + 1, size=size)
    denominators = rng.integers(1, max_denominator + 1, size=size)
    return [Fraction(int(a), int(b)) for a, b in zip(numerators, denominators)]


def random_symmetric_weights(
    rng: np.random.Generator,
    bunkbed: BunkbedGraph,
    max_numerator: int = 10,
    max_denominator: int = 6,
    allow_zero: bool = False,
    allow_zero_vertical: Optional[bool] = None,
) -> List[Fraction]:
    """
    Random reflection-symmetric weights on a bunkbed graph: one draw per base edge, used on both layers, then one
    draw per vertical edge.

    Args:
        allow_zero: whether horizontal weights may be 0.
        allow_zero_vertical: whether vertical weights may be 0; follows `allow_zero` when unset.

    Returns:
        List[Fraction]: weights indexed by bunkbed edge id.
    """
    horizontal = random_rationals(rng, bunkbed.m, max_numerator, max_denominator, allow_zero)
    if allow_zero_vertical is None:
        allow_zero_vertical = allow_zero
    vertical = random_rationals(rng, bunkbed.n, max_numerator, max_denominator, allow_zero_vertical)
    return bunkbed.symmetric_weights(horizontal, vertical)
