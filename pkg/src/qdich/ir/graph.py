"""Interaction graph of a 2-local cost decomposition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import networkx as nx

from qdich.ir.cost import CostFunction


@dataclass(frozen=True)
class InteractionGraph:
    """Simple graph on the cost variables.

    Each edge keeps, under the ``terms`` attribute, every 2-local term whose
    support is that pair, coupling or not.
    """

    n: int
    graph: nx.Graph

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges)

    @property
    def max_degree(self) -> int:
        return max((d for _, d in self.graph.degree), default=0)

    def degree(self, v: int) -> int:
        return self.graph.degree[v]

    def degree_histogram(self) -> dict[int, int]:
        counts = Counter(d for _, d in self.graph.degree)
        return dict(sorted(counts.items()))


def interaction_graph(cost: CostFunction) -> InteractionGraph:
    """Edge {j,k} iff some term on {j,k} depends nontrivially on both variables."""
    graph = nx.Graph()
    graph.add_nodes_from(range(cost.n_vars))
    pair_terms: dict[tuple[int, int], list] = {}
    for term in cost.terms:
        if len(term.support) != 2:
            continue
        key = tuple(sorted(term.support))
        pair_terms.setdefault(key, []).append(term)
        if term.depends_on(0) and term.depends_on(1):
            graph.add_edge(*key)
    for key in graph.edges:
        graph.edges[key]["terms"] = pair_terms[tuple(sorted(key))]
    return InteractionGraph(cost.n_vars, graph)
