"""Exact chain-rule sampling for degree-2 QAOA instances.

Bits are drawn component by component (ascending lowest vertex), each
component in its canonical order. The probability of a prefix extended by
one bit is a left message contracted against a precomputed right
environment, so one draw costs a single sweep. Messages are cached per
prefix and rescaled to unit weight, so every contraction yields a
conditional directly.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from qdich.config import settings
from qdich.errors import FormatError, InvariantViolated
from qdich.ir.cost import QaoaInstance
from qdich.ir.graph import interaction_graph
from qdich.tnsim.components import Component, ComponentKind, decompose
from qdich.tnsim.contraction import (
    ComponentNetwork,
    LayerSchedule,
    check_simulable,
    layer_schedule,
)

logger = logging.getLogger(__name__)


class ChainRuleSampler:
    """Seeded exact sampler over all n qubits (qubit 0 leftmost).

    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), one
    uniform draw per bit: bit t is 1 when the draw falls below
    Pr[Z_t = 1 | prefix].
    """

    def __init__(self, instance: QaoaInstance, seed: int | None = None) -> None:
        check_simulable(instance)
        self.n = instance.n
        schedule = layer_schedule(instance)
        self.components = decompose(interaction_graph(instance.cost))
        self._networks: list[ComponentNetwork] = []
        self._densities: list[list[tuple[np.ndarray, np.ndarray]]] = []
        self._environments: list[list[np.ndarray]] = []
        for component in self.components:
            if component.kind == ComponentKind.ISOLATED:
                # A lone vertex is contracted as a path of length one
                component = Component(ComponentKind.PATH, component.vertices)
            network = ComponentNetwork.build(component, schedule)
            self._networks.append(network)
            positions = range(len(component.vertices))
            pairs = [(network.density(i, 0), network.density(i, 1)) for i in positions]
            self._densities.append(pairs)
            self._environments.append(network.environments())
        self._rng = np.random.default_rng(seed)
        self._branch = lru_cache(maxsize=settings.sampler_cache)(self._compute_branch)
        logger.info(
            "sampler ready: %d qubits in %d components, p = %d",
            self.n,
            len(self.components),
            instance.p,
        )

    def _compute_branch(self, index: int, prefix: tuple[int, ...]) -> tuple[np.ndarray, float]:
        """Left message and conditional probability of the last bit of a non-empty prefix.

        Cached messages are rescaled to unit weight, so the weight of an extension
        is the conditional itself and long components never underflow.
        """
        network = self._networks[index]
        position = len(prefix) - 1
        density = self._densities[index][position][prefix[-1]]
        if position == 0:
            message = network.start(density)
        else:
            parent, _ = self._branch(index, prefix[:-1])
            message = network.advance(parent, position, density)
        weight = max(network.weight(message, self._environments[index][position]), 0.0)
        if weight > 0.0:
            message = message / weight
        return message, weight

    def draw(self) -> tuple[str, float]:
        """One sample and the product of the conditionals it was drawn with."""
        bits = [0] * self.n
        product = 1.0
        for index, component in enumerate(self.components):
            prefix: tuple[int, ...] = ()
            for vertex in component.vertices:
                w0 = self._branch(index, prefix + (0,))[1]
                w1 = self._branch(index, prefix + (1,))[1]
                if w0 + w1 <= 0.0:
                    raise InvariantViolated(f"prefix of component {index} has zero weight")
                p1 = w1 / (w0 + w1)
                bit = 1 if self._rng.random() < p1 else 0
                product *= p1 if bit else 1.0 - p1
                prefix += (bit,)
                bits[vertex] = bit
        return "".join(str(b) for b in bits), product

    def sample(self, count: int) -> list[str]:
        return [self.draw()[0] for _ in range(count)]


def sample(instance: QaoaInstance, seed: int | None, count: int) -> list[str]:
    """``count`` exact samples, reproducible for a given seed.

    Raises:
        DegreeTooHigh: the interaction graph has a vertex of degree 3 or more
        PostSelectionUnsupported: the instance post-selects
    """
    if count < 0:
        raise FormatError(f"sample count must be non-negative, got {count}")
    if count == 0:
        check_simulable(instance)
        decompose(interaction_graph(instance.cost))
        return []
    return ChainRuleSampler(instance, seed).sample(count)
