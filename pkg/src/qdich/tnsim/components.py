"""Decomposition of a degree-2 interaction graph into isolated vertices, paths and cycles."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from qdich.errors import DegreeTooHigh
from qdich.ir.cost import Term
from qdich.ir.graph import InteractionGraph


class ComponentKind(str, Enum):
    ISOLATED = "isolated"
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Component:
    """A connected component in canonical order.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]``; for a cycle the
    last edge is the wrap edge from the last vertex back to the first.
    ``edge_terms[i]`` holds the 2-local terms supported on ``edges[i]``.
    """

    kind: ComponentKind
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    edge_terms: tuple[tuple[Term, ...], ...] = ()

    def __post_init__(self) -> None:
        expected = {
            ComponentKind.ISOLATED: 0,
            ComponentKind.PATH: len(self.vertices) - 1,
            ComponentKind.CYCLE: len(self.vertices),
        }[self.kind]
        if len(self.edges) != expected:
            raise ValueError(
                f"{self.kind.value} on {len(self.vertices)} vertices needs {expected} edges"
            )

    @property
    def lowest(self) -> int:
        return min(self.vertices)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "vertices": list(self.vertices)}


def _walk(graph: nx.Graph, start: int, first: int, length: int) -> list[int]:
    order = [start, first]
    while len(order) < length:
        previous, current = order[-2], order[-1]
        step = [v for v in graph.neighbors(current) if v != previous]
        order.append(step[0])
    return order


def _component(graph: nx.Graph, nodes: set[int]) -> Component:
    if len(nodes) == 1:
        return Component(ComponentKind.ISOLATED, (next(iter(nodes)),))
    sub = graph.subgraph(nodes)
    if sub.number_of_edges() == len(nodes) - 1:
        kind = ComponentKind.PATH
        start = min(v for v in nodes if sub.degree[v] == 1)
        order = _walk(sub, start, next(iter(sub.neighbors(start))), len(nodes))
        pairs = list(zip(order, order[1:]))
    else:
        kind = ComponentKind.CYCLE
        start = min(nodes)
        order = _walk(sub, start, min(sub.neighbors(start)), len(nodes))
        pairs = list(zip(order, order[1:])) + [(order[-1], order[0])]
    terms = tuple(tuple(graph.edges[u, v].get("terms", ())) for u, v in pairs)
    return Component(kind, tuple(order), tuple(pairs), terms)


def decompose(graph: InteractionGraph) -> list[Component]:
    """Split the graph into components ordered by lowest vertex.

    Paths run from their lower-indexed endpoint; cycles start at their lowest
    vertex and head toward its lower-indexed neighbour.

    Raises:
        DegreeTooHigh: some vertex has degree 3 or more
    """
    for v in sorted(graph.graph.nodes):
        degree = graph.degree(v)
        if degree >= 3:
            raise DegreeTooHigh(v, degree)
    components = [
        _component(graph.graph, set(nodes)) for nodes in nx.connected_components(graph.graph)
    ]
    return sorted(components, key=lambda c: c.lowest)


def canonical_ordering(components: list[Component]) -> list[int]:
    """Concatenation of the component orders, used for cut profiles and sampling."""
    return [v for component in components for v in component.vertices]
