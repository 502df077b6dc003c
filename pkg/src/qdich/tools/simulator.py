"""Degree-2 simulator commands: marginal, sample, graph-info."""

from __future__ import annotations

import logging
from typing import Optional

from qdich.errors import DegreeTooHigh
from qdich.ir.graph import interaction_graph
from qdich.tnsim import canonical_ordering, cut_width, decompose, marginal, sample
from qdich.tools.common import load_instance, parse_outcome, parse_subset
from qdich.utils.file_manager import write_file

logger = logging.getLogger(__name__)


def marginal_probability(in_path: str, subset: Optional[str], outcome: Optional[str]) -> dict:
    """
    Marginal probability Pr[Z_S = z_S] of a degree-2 instance.

    Args:
        in_path: QAOA instance JSON
        subset: Comma-separated qubits (empty for the trivial marginal)
        outcome: Bits for ``subset``, qubit order as listed

    Returns:
        Subset, outcome and probability
    """
    instance = load_instance(in_path)
    qubits = parse_subset(subset)
    bits = parse_outcome(outcome, len(qubits))
    return {"subset": qubits, "outcome": bits, "probability": marginal(instance, qubits, bits)}


def sample_bitstrings(
    in_path: str, count: int, seed: Optional[int] = None, out_path: Optional[str] = None
) -> list[str]:
    """
    Draw exact samples and optionally write them one per line.

    Args:
        in_path: QAOA instance JSON
        count: Number of samples
        seed: Seed of the random source
        out_path: File to write (qubit 0 leftmost, one bitstring per line)

    Returns:
        The samples
    """
    instance = load_instance(in_path)
    samples = sample(instance, seed, count)
    if out_path is not None:
        write_file(out_path, "".join(s + "\n" for s in samples))
        logger.info("wrote %d samples to %s", len(samples), out_path)
    return samples


def graph_info(in_path: str) -> dict:
    """
    Interaction graph summary, components and cut profile of an instance.

    Args:
        in_path: QAOA instance JSON

    Returns:
        Degrees, components in sampling order (when degree <= 2) and the cut profile
    """
    instance = load_instance(in_path)
    graph = interaction_graph(instance.cost)
    info = {
        "n": instance.n,
        "p": instance.p,
        "edges": [list(e) for e in graph.edges],
        "max_degree": graph.max_degree,
        "degree_histogram": {str(d): c for d, c in graph.degree_histogram().items()},
    }
    try:
        components = decompose(graph)
    except DegreeTooHigh as e:
        info["components"] = None
        info["components_error"] = str(e)
        ordering = None
    else:
        info["components"] = [c.to_dict() for c in components]
        ordering = canonical_ordering(components)
    info["cut_profile"] = cut_width(instance, ordering).to_dict()
    return info
