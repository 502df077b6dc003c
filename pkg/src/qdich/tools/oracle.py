"""Brute-force oracle command."""

from __future__ import annotations

from typing import Optional

from qdich.oracle import marginal_oracle, post_selected_distribution
from qdich.tools.common import as_circuit, load, parse_outcome, parse_subset, pick_backend


def oracle(
    in_path: str,
    backend: str = "auto",
    subset: Optional[str] = None,
    outcome: Optional[str] = None,
) -> dict:
    """
    Exact or floating-point output distribution of a circuit or instance file.

    Args:
        in_path: Circuit, QAOA instance or IQP instance JSON
        backend: ``exact``, ``float`` or ``auto``
        subset: Optional comma-separated qubits for a single marginal
        outcome: Bits for ``subset``

    Returns:
        ``{"outcomes": {bitstring: probability}, "conditioning_probability": p}``,
        or the requested marginal
    """
    circuit = as_circuit(load(in_path))
    backend = pick_backend(backend, circuit)
    if subset is not None:
        qubits = parse_subset(subset)
        bits = parse_outcome(outcome, len(qubits))
        return {
            "backend": backend,
            "subset": qubits,
            "outcome": bits,
            "probability": marginal_oracle(circuit, qubits, bits, backend),
        }
    distribution = post_selected_distribution(circuit, backend)
    return {
        "backend": backend,
        "wires": list(distribution.wires),
        "outcomes": distribution.probabilities(),
        "conditioning_probability": distribution.conditioning_probability,
    }
