#!/usr/bin/env python3
"""
Writes example input files for every qdich command.

Usage: generate_examples.py [OUTPUT_DIR]   (default: output/)
"""

import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qdich.ir import Circuit, CostFunction, Gate, QaoaInstance, Term  # noqa: E402
from qdich.ir.formats import circuit_to_dict, instance_to_dict  # noqa: E402
from qdich.utils.file_manager import write_file  # noqa: E402
from qdich.utils.jsonio import dumps  # noqa: E402


def example_circuit() -> Circuit:
    """Three-qubit {H, Tdg, CZ} circuit for ``compile`` and ``verify``."""
    gates = [
        Gate.h(0),
        Gate.tdg(0),
        Gate.cz(0, 1),
        Gate.h(1),
        Gate.tdg(1),
        Gate.h(2),
        Gate.cz(1, 2),
        Gate.h(0),
    ]
    return Circuit.create(3, gates)


def example_instance() -> QaoaInstance:
    """Degree-2 instance: a 4-cycle of MaxCut edges plus a 3-vertex path and one free qubit."""
    cut = (0.0, 1.0, 1.0, 0.0)
    terms = [Term((u, v), cut) for u, v in [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6)]]
    terms.append(Term((7,), (0.0, 0.5)))
    return QaoaInstance(
        n=8,
        p=2,
        cost=CostFunction(8, tuple(terms)),
        gammas=(0.4, 0.8),
        betas=(math.pi / 8, math.pi / 16),
    )


def generate_all_examples(output_dir: str) -> None:
    """Generates every example file into ``output_dir``"""
    os.makedirs(output_dir, exist_ok=True)
    files = {
        "circuit.json": circuit_to_dict(example_circuit()),
        "instance.json": instance_to_dict(example_instance()),
    }
    for name, document in files.items():
        path = os.path.join(output_dir, name)
        write_file(path, dumps(document))
        print(f"✓ {path}")


if __name__ == "__main__":
    generate_all_examples(sys.argv[1] if len(sys.argv) > 1 else "output")
