"""
Reader and writer for the text graph format.

```
# comment
n m
u v [w]        (m lines, w an integer or p/q, default 1)
%vertical      (optional section, bunkbed weight files only)
w              (n lines, one weight per vertex in vertex order)
```

The `%vertical` section may instead list `u w` lines for some vertices, the others keeping weight 1. The two
forms do not mix.
"""
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from bunkbed_lab.graphcore import BaseGraph, BunkbedGraph
from bunkbed_lab.utils import format_rational, parse_rational

VERTICAL_SECTION = "%vertical"


@dataclass(frozen=True)
class GraphFile:
    """
    Contents of a graph file.

    Args:
        graph: the base graph.
        edge_weights: one weight per base edge (1 when omitted in the file).
        vertical_weights: one weight per vertex when the file has a `%vertical` section, else None.
    """

    graph: BaseGraph
    edge_weights: Tuple[Fraction, ...]
    vertical_weights: Optional[Tuple[Fraction, ...]] = None

    def bunkbed_weights(self, bunkbed: Optional[BunkbedGraph] = None) -> List[Fraction]:
        """
        Reflection-symmetric weights on `graph x K2`, indexed by bunkbed edge id. Vertical weights default to 1.
        """
        bunkbed = bunkbed if bunkbed is not None else BunkbedGraph(self.graph)
        vertical = self.vertical_weights if self.vertical_weights is not None else [1] * self.graph.vertex_count
        return bunkbed.symmetric_weights(list(self.edge_weights), list(vertical))


def parse_graph_text(text: str) -> GraphFile:
    """
    Parses the text graph format.

    Raises:
        ValueError: on malformed lines, with the offending line number.
        MalformedEdge: on out-of-range endpoints, self-loops or duplicate edges.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    if not lines:
        raise ValueError("Empty graph file")

    number, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2:
        raise ValueError("Line {}: expected 'n m', got {!r}".format(number, header))
    n, m = _int(tokens[0], number), _int(tokens[1], number)

    edges, weights = [], []
    vertical = None
    vertical_form = None
    for number, line in lines[1:]:
        if line == VERTICAL_SECTION:
            if vertical is not None:
                raise ValueError("Line {}: duplicate {} section".format(number, VERTICAL_SECTION))
            vertical = {}
            continue
        tokens = line.split()
        if vertical is None:
            if len(tokens) not in (2, 3):
                raise ValueError("Line {}: expected 'u v [w]', got {!r}".format(number, line))
            edges.append((_int(tokens[0], number), _int(tokens[1], number)))
            weights.append(_rational(tokens[2], number) if len(tokens) == 3 else Fraction(1))
        else:
            if len(tokens) not in (1, 2):
                raise ValueError("Line {}: expected 'w' or 'u w', got {!r}".format(number, line))
            if vertical_form is None:
                vertical_form = len(tokens)
            elif len(tokens) != vertical_form:
                raise ValueError("Line {}: bare weights and 'u w' lines do not mix".format(number))
            if vertical_form == 1:
                if len(vertical) == n:
                    raise ValueError("Line {}: more than {} vertical weights".format(number, n))
                vertical[len(vertical)] = _rational(tokens[0], number)
                continue
            u = _int(tokens[0], number)
            if not 0 <= u < n or u in vertical:
                raise ValueError("Line {}: bad or repeated vertex {}".format(number, u))
            vertical[u] = _rational(tokens[1], number)

    if len(edges) != m:
        raise ValueError("Header announces {} edges, found {}".format(m, len(edges)))
    if vertical_form == 1 and len(vertical) != n:
        raise ValueError("Section {} lists {} weights for {} vertices".format(VERTICAL_SECTION, len(vertical), n))

    graph = BaseGraph(n, edges)
    vertical_weights = None
    if vertical is not None:
        vertical_weights = tuple(vertical.get(u, Fraction(1)) for u in range(n))
    return GraphFile(graph, tuple(weights), vertical_weights)


def read_graph_file(path: Union[str, Path]) -> GraphFile:
    return parse_graph_text(Path(path).read_text())


def format_graph_text(
    graph: BaseGraph,
    edge_weights: Optional[Sequence[Fraction]] = None,
    vertical_weights: Optional[Sequence[Fraction]] = None,
) -> str:
    """Serializes a graph (and optional weights) in the text graph format, LF line endings."""
    lines = ["{} {}".format(graph.vertex_count, graph.edge_count)]
    for idx, (u, v) in enumerate(graph.edge_list):
        if edge_weights is None:
            lines.append("{} {}".format(u, v))
        else:
            lines.append("{} {} {}".format(u, v, format_rational(edge_weights[idx])))
    if vertical_weights is not None:
        lines.append(VERTICAL_SECTION)
        lines.extend(format_rational(w) for w in vertical_weights)
    return "\n".join(lines) + "\n"


def write_graph_file(
    path: Union[str, Path],
    graph: BaseGraph,
    edge_weights: Optional[Sequence[Fraction]] = None,
    vertical_weights: Optional[Sequence[Fraction]] = None,
) -> None:
    Path(path).write_text(format_graph_text(graph, edge_weights, vertical_weights), newline="\n")


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValueError("Line {}: expected an integer, got {!r}".format(number, token)) from None


def _rational(token: str, number: int) -> Fraction:
    try:
        return parse_rational(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError("Line {}: expected an integer or p/q, got {!r}".format(number, token)) from None
