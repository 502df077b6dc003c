"""Brute-force ground truth: state vectors, distributions, marginals."""

from qdich.oracle.distribution import (
    Distribution,
    marginal_oracle,
    multiplicative_error,
    post_selected_distribution,
)
from qdich.oracle.statevector import StateVector, simulate

__all__ = [
    "Distribution",
    "StateVector",
    "marginal_oracle",
    "multiplicative_error",
    "post_selected_distribution",
    "simulate",
]
