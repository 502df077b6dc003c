"""Output distributions of circuits and the multiplicative-error functional."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from qdich.arith import Cyclotomic
from qdich.config import settings
from qdich.errors import FormatError, ZeroPostSelectionProbability
from qdich.ir.circuit import Circuit
from qdich.oracle.statevector import Backend, real_quadratic, run_projected

logger = logging.getLogger(__name__)

Weight = float | Cyclotomic


@dataclass(frozen=True)
class Distribution:
    """Distribution over bitstrings of ``wires`` (first wire leftmost).

    ``weights`` maps each outcome with nonzero weight to its unnormalised
    weight and ``total`` is their sum, which is also the probability that the
    post-selection register reads all zeros. Exact distributions hold field
    elements and are never divided.
    """

    wires: tuple[int, ...]
    weights: Mapping[str, Weight]
    total: Weight
    exact: bool = False
    _floats: dict[str, float] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_probabilities(
        cls, probabilities: Mapping[str, float], wires: Sequence[int] | None = None
    ) -> Distribution:
        width = len(next(iter(probabilities), ""))
        wires = tuple(range(width)) if wires is None else tuple(wires)
        weights = {k: float(v) for k, v in probabilities.items() if v != 0}
        return cls(wires, weights, float(sum(weights.values())))

    @property
    def width(self) -> int:
        return len(self.wires)

    @property
    def conditioning_probability(self) -> float:
        return float(self.total)

    def support(self) -> list[str]:
        return sorted(self.weights)

    def probability(self, outcome: str) -> float:
        if outcome not in self.weights:
            return 0.0
        if outcome not in self._floats:
            self._floats[outcome] = float(self.weights[outcome]) / float(self.total)
        return self._floats[outcome]

    def probabilities(self) -> dict[str, float]:
        """Normalised probabilities of the support, in bitstring order."""
        return {outcome: self.probability(outcome) for outcome in self.support()}

    def equals(self, other: Distribution) -> bool:
        """Exact equality by cross-multiplication; both sides must be exact."""
        if not (self.exact and other.exact):
            raise ValueError("exact equality needs two exact distributions")
        if self.width != other.width or set(self.weights) != set(other.weights):
            return False
        return all(
            self.weights[x] * other.total == other.weights[x] * self.total for x in self.weights
        )


def _bitstrings(width: int) -> list[str]:
    return [format(i, f"0{width}b") if width else "" for i in range(2**width)]


def _collect(register, keep: Sequence[int], backend: Backend) -> tuple[dict[str, Weight], Weight]:
    labels = _bitstrings(len(keep))
    if backend == "float":
        probs = register.weights(keep)
        total = float(np.sum(probs))
        if total < settings.float_zero:
            raise ZeroPostSelectionProbability(
                f"post-selection probability {total:.3e} is below {settings.float_zero:g}"
            )
        if total < 1e-6:
            logger.warning("post-selection probability %.3e; prefer the exact backend", total)
        # Round-off below the zero threshold does not count as support
        cutoff = settings.float_zero * total
        weights = {label: float(p) for label, p in zip(labels, probs) if p > cutoff}
        return weights, total

    s0, s1 = register.weights(keep)
    exponent = register.exponent
    weights: dict[str, Weight] = {}
    for label, a, b in zip(labels, s0, s1):
        if a or b:
            weights[label] = real_quadratic(int(a), int(b), exponent)
    total = real_quadratic(int(sum(int(a) for a in s0)), int(sum(int(b) for b in s1)), exponent)
    if not total:
        raise ZeroPostSelectionProbability("post-selection register never reads all zeros")
    return weights, total


def post_selected_distribution(circuit: Circuit, backend: Backend = "float") -> Distribution:
    """Distribution over the output wires conditioned on the post-selection register reading 0.

    Qubits that are neither output nor post-selected are traced out.

    Raises:
        ZeroPostSelectionProbability: the conditioning event has probability zero
    """
    wires = tuple(circuit.output_wires)
    keep = circuit.output_qubits
    register = run_projected(circuit, backend, keep)
    weights, total = _collect(register, keep, backend)
    return Distribution(wires, weights, total, exact=(backend == "exact"))


def marginal_oracle(
    circuit: Circuit,
    subset: Sequence[int],
    outcome: str | Sequence[int],
    backend: Backend = "float",
) -> float:
    """Pr[Z_S = z_S] for physical qubits S, after post-selection conditioning.

    Raises:
        FormatError: S overlaps the post-selection register or the outcome has the wrong length
    """
    subset = [int(q) for q in subset]
    bits = "".join(str(int(b)) for b in outcome)
    if len(bits) != len(subset) or set(bits) - {"0", "1"}:
        raise FormatError(f"outcome {bits!r} does not match subset of size {len(subset)}")
    if len(set(subset)) != len(subset):
        raise FormatError(f"subset {subset} repeats a qubit")
    if set(subset) & circuit.post_select:
        raise FormatError("subset overlaps the post-selection register")
    if any(not 0 <= q < circuit.n_qubits for q in subset):
        raise FormatError(f"subset {subset} out of range [0, {circuit.n_qubits})")

    register = run_projected(circuit, backend, subset)
    weights, total = _collect(register, subset, backend)
    weight = weights.get(bits, 0)
    return float(weight) / float(total)


def multiplicative_error(d: Distribution, d2: Distribution) -> float:
    """Smallest c >= 1 with d(x)/c <= d2(x) <= c*d(x) for every x.

    Returns ``math.inf`` when exactly one of d(x), d2(x) is zero for some x and
    exactly 1.0 when both distributions are exact and equal.
    """
    if d.width != d2.width:
        raise ValueError(f"distributions over {d.width} and {d2.width} bits")
    if d.exact and d2.exact and d.equals(d2):
        return 1.0
    if set(d.weights) != set(d2.weights):
        return math.inf
    c = 1.0
    for outcome in d.weights:
        p, q = d.probability(outcome), d2.probability(outcome)
        c = max(c, p / q, q / p)
    return c
