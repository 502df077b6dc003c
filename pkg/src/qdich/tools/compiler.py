"""Compilation, gadget and end-to-end verification commands."""

from __future__ import annotations

import json
import logging
import math
from typing import Optional

from qdich.arith import Cyclotomic
from qdich.compiler import compile, compile_iqp, compile_report, completion_matrix, gadget_solve
from qdich.compiler.gadget import parse_angle
from qdich.errors import FormatError
from qdich.ir.cost import qaoa_to_circuit
from qdich.ir.formats import instance_to_dict, iqp_to_dict
from qdich.oracle import multiplicative_error, post_selected_distribution
from qdich.tools.common import load_circuit, pick_backend
from qdich.utils.file_manager import sidecar_path, write_file
from qdich.utils.jsonio import dumps, error_value

logger = logging.getLogger(__name__)

# Largest pointwise probability difference a float-backend verify accepts
FLOAT_MATCH_TOLERANCE = 1e-10


def compile_circuit(
    in_path: str, out_path: Optional[str] = None, iqp: bool = False, monotone: bool = False
) -> dict:
    """
    Compile a circuit file into a QAOA (or IQP) instance file.

    Args:
        in_path: Circuit JSON over {H, Tdg, CZ}
        out_path: Instance JSON to write; the report goes next to it
        iqp: Emit the IQP specialisation instead
        monotone: Apply the monotone rewrite (QAOA only)

    Returns:
        The compile report, plus the instance itself when no output path is given
    """
    source = load_circuit(in_path)
    if iqp:
        if monotone:
            raise FormatError("--monotone applies to QAOA output only")
        compiled = compile_iqp(source)
        document = iqp_to_dict(compiled)
    else:
        compiled = compile(source, monotone=monotone)
        document = instance_to_dict(compiled)
    report = compile_report(source, compiled)

    if out_path is None:
        return {"report": report, "instance": document}
    write_file(out_path, dumps(document))
    report_path = sidecar_path(out_path, ".report.json")
    write_file(str(report_path), dumps(report))
    logger.info("wrote %s and %s", out_path, report_path)
    return {"report": report, "out": out_path, "report_path": str(report_path)}


def _entry(value) -> dict:
    z = complex(value)
    out = {"complex": [z.real, z.imag]}
    if isinstance(value, Cyclotomic):
        out["exact"] = str(value)
    return out


def _parse_matrix(text: str):
    try:
        rows = json.loads(text)
        matrix = [[complex(*e) if isinstance(e, list) else complex(e) for e in row] for row in rows]
    except (ValueError, TypeError) as e:
        raise FormatError(f"cannot parse matrix {text!r}: {e}") from e
    return matrix


def gadget(F: str, lambda_phase: str | float = 0.0) -> dict:
    """
    Solve the Hadamard gadget for a completion gate.

    Args:
        F: ``H``, ``Htilde``, ``Tdg``, ``xrot:<angle>`` or a JSON 2x2 matrix
           whose entries are numbers or [re, im] pairs
        lambda_phase: Phase of lambda, in radians or as ``pi/4``-style text

    Returns:
        The GadgetSpec as plain data
    """
    matrix = _parse_matrix(F) if F.strip().startswith("[") else completion_matrix(F)
    phase = parse_angle(lambda_phase) if isinstance(lambda_phase, str) else float(lambda_phase)
    spec = gadget_solve(matrix, phase)
    return {
        "exact": spec.exact,
        "F": [[_entry(x) for x in row] for row in spec.F],
        "r0": _entry(spec.r0),
        "r1": _entry(spec.r1),
        "lambda": _entry(spec.lam),
        "W": [_entry(w) for w in spec.W],
        "residues": list(spec.residues) if spec.residues is not None else None,
    }


def verify(
    in_path: str, backend: str = "auto", iqp: bool = False, monotone: bool = False
) -> dict:
    """
    Compile a circuit and compare the compiled post-selected distribution with the source.

    Args:
        in_path: Circuit JSON over {H, Tdg, CZ}
        backend: ``exact``, ``float`` or ``auto`` (exact when every gate qualifies)
        iqp: Verify the IQP specialisation
        monotone: Verify the monotone-rewritten instance

    Returns:
        Max pointwise deviation, multiplicative error and whether they match
    """
    source = load_circuit(in_path)
    if iqp:
        compiled = compile_iqp(source)
        target = compiled.to_circuit()
    else:
        compiled = compile(source, monotone=monotone)
        target = qaoa_to_circuit(compiled)
    backend = pick_backend(backend, target)
    expected = post_selected_distribution(source, backend)
    actual = post_selected_distribution(target, backend)

    outcomes = sorted(set(expected.weights) | set(actual.weights))
    deviation = max(
        (abs(expected.probability(x) - actual.probability(x)) for x in outcomes), default=0.0
    )
    c = multiplicative_error(expected, actual)
    if backend == "exact":
        match = expected.equals(actual)
    else:
        match = not math.isinf(c) and deviation <= FLOAT_MATCH_TOLERANCE
    payload = {
        "backend": backend,
        "n_source": source.n_qubits,
        "n_compiled": compiled.n,
        "post_selection_size": len(compiled.post_select),
        "conditioning_probability": actual.conditioning_probability,
        "max_deviation": deviation,
        "multiplicative_error": error_value(c),
        "match": match,
    }
    if not match:
        logger.warning("compiled distribution differs from the source (c = %s)", c)
    return payload
