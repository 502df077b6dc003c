"""Helpers shared by the command handlers."""

from __future__ import annotations

from qdich.errors import FormatError
from qdich.ir.circuit import Circuit, GateKind, eighth_root_multiple
from qdich.ir.cost import IqpInstance, QaoaInstance, qaoa_to_circuit
from qdich.ir.formats import load_document
from qdich.utils.file_manager import read_file


def load(path: str) -> Circuit | QaoaInstance | IqpInstance:
    return load_document(read_file(path))


def load_circuit(path: str) -> Circuit:
    document = load(path)
    if not isinstance(document, Circuit):
        raise FormatError(f"{path} is not a circuit file")
    return document


def load_instance(path: str) -> QaoaInstance:
    document = load(path)
    if not isinstance(document, QaoaInstance):
        raise FormatError(f"{path} is not a QAOA instance file")
    return document


def as_circuit(document: Circuit | QaoaInstance | IqpInstance) -> Circuit:
    if isinstance(document, QaoaInstance):
        return qaoa_to_circuit(document)
    if isinstance(document, IqpInstance):
        return document.to_circuit()
    return document


def exact_eligible(circuit: Circuit) -> bool:
    """True when every gate has entries in Q(w)."""
    for gate in circuit.gates:
        if gate.kind == GateKind.XROT:
            if eighth_root_multiple(gate.params[0]) is None:
                return False
        elif gate.is_diagonal and gate.phase_residues() is None:
            return False
    return True


def pick_backend(requested: str, circuit: Circuit) -> str:
    if requested == "auto":
        return "exact" if exact_eligible(circuit) else "float"
    return requested


def parse_subset(text: str | None) -> list[int]:
    """``"0,3,7"`` -> [0, 3, 7]; empty or missing -> []."""
    if not text or not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise FormatError(f"subset must be comma-separated qubit indices, got {text!r}") from e


def parse_outcome(text: str | None, size: int) -> str:
    outcome = (text or "").strip()
    if len(outcome) != size or set(outcome) - {"0", "1"}:
        raise FormatError(f"outcome {outcome!r} must be {size} bits")
    return outcome
