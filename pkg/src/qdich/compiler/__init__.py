"""Circuit-to-QAOA compiler: Hadamard gadgets, substitution passes, monotone rewrite."""

from .gadget import GadgetSpec, completion_matrix, gadget_solve
from .monotone import make_monotone
from .passes import (
    WireChain,
    collect_phases,
    compile,
    compile_iqp,
    compile_report,
    hadamard_substitute,
    preprocess,
)

__all__ = [
    "GadgetSpec",
    "WireChain",
    "collect_phases",
    "compile",
    "compile_iqp",
    "compile_report",
    "completion_matrix",
    "gadget_solve",
    "hadamard_substitute",
    "make_monotone",
    "preprocess",
]
