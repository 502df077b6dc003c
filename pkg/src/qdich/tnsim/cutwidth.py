"""Cut profiles of QAOA circuits under a linear qubit ordering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from qdich.errors import FormatError
from qdich.ir.cost import QaoaInstance, qaoa_to_circuit
from qdich.ir.graph import interaction_graph


@dataclass(frozen=True)
class CutProfile:
    """Crossing counts for cuts 1..n-1; cut i separates positions < i from positions >= i.

    ``delta[i-1]`` counts interaction-graph edges across cut i and
    ``gate_crossings[i-1]`` counts multi-qubit gates of the expanded circuit.
    """

    ordering: tuple[int, ...]
    p: int
    delta: tuple[int, ...]
    gate_crossings: tuple[int, ...]

    @property
    def max_delta(self) -> int:
        return max(self.delta, default=0)

    @property
    def width(self) -> int:
        """Circuit cut width: the most gates crossing any single cut."""
        return max(self.gate_crossings, default=0)

    @property
    def edge_width(self) -> int:
        return self.p * self.max_delta

    def to_dict(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "p": self.p,
            "delta": list(self.delta),
            "gate_crossings": list(self.gate_crossings),
            "max_delta": self.max_delta,
            "cut_width": self.width,
            "edge_width": self.edge_width,
        }


def _crossings(spans: list[tuple[int, int]], n: int) -> tuple[int, ...]:
    counts = [0] * max(n - 1, 0)
    for low, high in spans:
        for cut in range(low + 1, high + 1):
            counts[cut - 1] += 1
    return tuple(counts)


def cut_width(instance: QaoaInstance, ordering: Sequence[int] | None = None) -> CutProfile:
    """Count gates of ``qaoa_to_circuit(instance)`` crossing each cut of ``ordering``.

    A gate on qubits S crosses cut i iff min pos(S) < i <= max pos(S);
    single-qubit gates cross nothing. Defaults to the natural ordering.
    """
    n = instance.n
    ordering = tuple(range(n)) if ordering is None else tuple(int(q) for q in ordering)
    if sorted(ordering) != list(range(n)):
        raise FormatError(f"ordering must be a permutation of 0..{n - 1}")
    position = {q: i for i, q in enumerate(ordering)}

    def span(qubits) -> tuple[int, int]:
        places = [position[q] for q in qubits]
        return min(places), max(places)

    circuit = qaoa_to_circuit(instance)
    gate_spans = [span(g.qubits) for g in circuit.gates if g.arity > 1]
    edge_spans = [span(e) for e in interaction_graph(instance.cost).edges]
    return CutProfile(
        ordering=ordering,
        p=instance.p,
        delta=_crossings(edge_spans, n),
        gate_crossings=_crossings(gate_spans, n),
    )
