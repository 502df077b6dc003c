"""qdich - compile circuits into post-selected QAOA and simulate degree-2 QAOA exactly."""

__version__ = "0.1.0"
