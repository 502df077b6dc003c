"""Circuit and cost-function data model."""

from .circuit import Circuit, Gate, GateKind, Prep, validate
from .cost import CostFunction, IqpInstance, QaoaInstance, Term, qaoa_to_circuit
from .graph import InteractionGraph, interaction_graph

__all__ = [
    "Circuit",
    "CostFunction",
    "Gate",
    "GateKind",
    "InteractionGraph",
    "IqpInstance",
    "Prep",
    "QaoaInstance",
    "Term",
    "interaction_graph",
    "qaoa_to_circuit",
    "validate",
]
