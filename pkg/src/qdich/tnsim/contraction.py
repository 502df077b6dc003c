"""Exact marginals of degree-2 QAOA instances by boundary contraction.

Inserting computational-basis resolutions between the p phase layers turns
each qubit into a history index x in [0, 2^p) (bit l of x is the basis value
at layer l) plus its final outcome z. The amplitude of an outcome is then a
sum over histories of local tensors L_v[x, z] times edge tensors E[x_u, x_v].
Probabilities are contracted on the doubled network: vertex densities
A_v = sum over allowed z of L_v[:, z] L_v[:, z]^dagger joined by E (ket) and
conj(E) (bra). A path sweep carries a D x D message, D = 2^p; a cycle keeps
the first vertex's indices open, giving a D^4 message closed by the wrap edge.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from qdich.errors import FormatError, PostSelectionUnsupported
from qdich.ir.cost import QaoaInstance
from qdich.ir.graph import interaction_graph
from qdich.tnsim.components import Component, ComponentKind, decompose

logger = logging.getLogger(__name__)

Constraints = Mapping[int, int]


@dataclass(frozen=True)
class LayerSchedule:
    """Angles plus the folded 1-local table of every vertex.

    2-local terms on pairs that are not interaction edges are additively
    separable and have already been split into the 1-local tables.
    """

    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    local: Mapping[int, tuple[float, float]] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return len(self.gammas)

    @cached_property
    def history_bits(self) -> np.ndarray:
        """(2^p, p) array; row x holds bit l of x in column l."""
        x = np.arange(2**self.p)
        return (x[:, None] >> np.arange(self.p)[None, :]) & 1

    def rotation(self, layer: int) -> np.ndarray:
        c, s = math.cos(self.betas[layer]), math.sin(self.betas[layer])
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def layer_schedule(instance: QaoaInstance) -> LayerSchedule:
    graph = interaction_graph(instance.cost)
    local = {v: [0.0, 0.0] for v in range(instance.n)}
    for term in instance.cost.terms:
        if len(term.support) == 1:
            v = term.support[0]
            local[v][0] += term.table[0]
            local[v][1] += term.table[1]
        elif not graph.graph.has_edge(*term.support):
            # t(bu, bv) = t(bu, 0) + (t(0, bv) - t(0, 0)) when it does not couple u and v
            u, v = term.support
            t00, t01, t10, _ = term.table
            local[u][0] += t00
            local[u][1] += t10
            local[v][1] += t01 - t00
    return LayerSchedule(
        gammas=instance.gammas,
        betas=instance.betas,
        local={v: (a, b) for v, (a, b) in local.items()},
    )


def local_tensor(schedule: LayerSchedule, vertex: int) -> np.ndarray:
    """L[x, z] = 2^-1/2 * prod_l e^{-i gamma_l h(x_l)} R_l[x_{l+1}, x_l] with x_p = z."""
    bits = schedule.history_bits
    size = bits.shape[0]
    h = np.asarray(schedule.local.get(vertex, (0.0, 0.0)), dtype=float)
    out = np.full((size, 2), 1 / math.sqrt(2), dtype=complex)
    for layer in range(schedule.p):
        current = bits[:, layer]
        phase = np.exp(-1j * schedule.gammas[layer] * h[current])
        rot = schedule.rotation(layer)
        if layer + 1 < schedule.p:
            factor = (phase * rot[bits[:, layer + 1], current])[:, None]
        else:
            factor = phase[:, None] * rot[:, current].T
        out = out * factor
    return out


def edge_tensor(schedule: LayerSchedule, table: Sequence[float]) -> np.ndarray:
    """E[x, y] = exp(-i sum_l gamma_l T[2 x_l + y_l]) for a table oriented (x first)."""
    bits = schedule.history_bits
    if schedule.p == 0:
        return np.ones((1, 1), dtype=complex)
    index = 2 * bits[:, None, :] + bits[None, :, :]
    values = np.asarray(table, dtype=float)[index]
    return np.exp(-1j * (values @ np.asarray(schedule.gammas, dtype=float)))


def vertex_density(local: np.ndarray, constraint: int | None = None) -> np.ndarray:
    """A[x, y] = sum over allowed outcomes z of L[x, z] conj(L[y, z])."""
    if constraint is None:
        return local @ local.conj().T
    column = local[:, constraint]
    return np.outer(column, column.conj())


def _edge_table(component: Component, index: int) -> tuple[float, float, float, float]:
    first = component.edges[index][0]
    total = [0.0, 0.0, 0.0, 0.0]
    for term in component.edge_terms[index]:
        for i, value in enumerate(term.oriented(first)):
            total[i] += value
    return tuple(total)


@dataclass
class ComponentNetwork:
    """Doubled tensor network of one path or cycle component, in canonical order."""

    component: Component
    local: list[np.ndarray]
    edges: list[np.ndarray]
    wrap: np.ndarray | None = None

    @classmethod
    def build(cls, component: Component, schedule: LayerSchedule) -> ComponentNetwork:
        local = [local_tensor(schedule, v) for v in component.vertices]
        tables = [_edge_table(component, i) for i in range(len(component.edges))]
        edges = [edge_tensor(schedule, t) for t in tables]
        wrap = None
        if component.kind == ComponentKind.CYCLE:
            wrap = edges.pop()
        return cls(component, local, edges, wrap)

    @property
    def is_cycle(self) -> bool:
        return self.wrap is not None

    def density(self, position: int, constraint: int | None) -> np.ndarray:
        return vertex_density(self.local[position], constraint)

    def start(self, density: np.ndarray) -> np.ndarray:
        if not self.is_cycle:
            return density
        eye = np.eye(density.shape[0])
        # [a, b, x, y]: a, b keep the first vertex open for the wrap edge
        return np.einsum("ax,by,xy->abxy", eye, eye, density)

    def advance(self, message: np.ndarray, position: int, density: np.ndarray) -> np.ndarray:
        edge = self.edges[position - 1]
        if not self.is_cycle:
            return (edge.T @ message @ edge.conj()) * density
        step = np.einsum("abxy,xu->abuy", message, edge)
        step = np.einsum("abuy,yv->abuv", step, edge.conj())
        return step * density

    def close(self, message: np.ndarray) -> complex:
        if not self.is_cycle:
            return message.sum()
        return np.einsum("abxy,xa,yb->", message, self.wrap, self.wrap.conj())

    def contract(self, constraints: Constraints) -> float:
        vertices = self.component.vertices
        message = self.start(self.density(0, constraints.get(vertices[0])))
        for position in range(1, len(vertices)):
            density = self.density(position, constraints.get(vertices[position]))
            message = self.advance(message, position, density)
        return float(self.close(message).real)

    def environments(self) -> list[np.ndarray]:
        """Right environments: contraction of every vertex after each position, unconstrained."""
        k = len(self.component.vertices)
        size = self.local[0].shape[0]
        envs: list[np.ndarray] = [None] * k
        if self.is_cycle:
            envs[-1] = np.einsum("xa,yb->xyab", self.wrap, self.wrap.conj())
        else:
            envs[-1] = np.ones((size, size), dtype=complex)
        for position in range(k - 2, -1, -1):
            edge = self.edges[position]
            density = self.density(position + 1, None)
            if self.is_cycle:
                inner = density[:, :, None, None] * envs[position + 1]
                inner = np.einsum("xu,uvab->xvab", edge, inner)
                envs[position] = np.einsum("yv,xvab->xyab", edge.conj(), inner)
            else:
                envs[position] = edge @ (density * envs[position + 1]) @ edge.conj().T
        return envs

    def weight(self, message: np.ndarray, environment: np.ndarray) -> float:
        """Probability of a constrained prefix, given its message and right environment."""
        if self.is_cycle:
            value = np.einsum("abxy,xyab->", message, environment)
        else:
            value = np.sum(message * environment)
        return float(value.real)


def isolated_probability(schedule: LayerSchedule, vertex: int, constraint: int | None) -> float:
    """Direct 2-dimensional evolution of a qubit with no couplings."""
    if constraint is None:
        return 1.0
    h = np.asarray(schedule.local.get(vertex, (0.0, 0.0)), dtype=float)
    state = np.full(2, 1 / math.sqrt(2), dtype=complex)
    for layer in range(schedule.p):
        state = schedule.rotation(layer) @ (np.exp(-1j * schedule.gammas[layer] * h) * state)
    return float(abs(state[constraint]) ** 2)


def component_marginal(
    component: Component, schedule: LayerSchedule, constraints: Constraints
) -> float:
    """Pr[Z_v = z_v for v in constraints] for the output distribution of one component."""
    extra = set(constraints) - set(component.vertices)
    if extra:
        raise ValueError(f"constraints on vertices {sorted(extra)} outside the component")
    if component.kind == ComponentKind.ISOLATED:
        v = component.vertices[0]
        return isolated_probability(schedule, v, constraints.get(v))
    if not constraints:
        return 1.0
    return ComponentNetwork.build(component, schedule).contract(constraints)


def _constraints(n: int, subset: Sequence[int], outcome: str | Sequence[int]) -> dict[int, int]:
    bits = [int(b) for b in outcome]
    subset = [int(v) for v in subset]
    if len(bits) != len(subset) or any(b not in (0, 1) for b in bits):
        raise FormatError(f"outcome {outcome!r} does not match subset of size {len(subset)}")
    if len(set(subset)) != len(subset) or any(not 0 <= v < n for v in subset):
        raise FormatError(f"subset {subset} must hold distinct qubits in [0, {n})")
    return dict(zip(subset, bits))


def check_simulable(instance: QaoaInstance) -> None:
    if instance.post_select:
        raise PostSelectionUnsupported(
            "the degree-2 simulator needs an instance without post-selection"
        )


def marginal(instance: QaoaInstance, subset: Sequence[int], outcome: str | Sequence[int]) -> float:
    """Pr[Z_S = z_S] as the product of per-component marginals.

    Raises:
        DegreeTooHigh: the interaction graph has a vertex of degree 3 or more
        PostSelectionUnsupported: the instance post-selects
    """
    check_simulable(instance)
    constraints = _constraints(instance.n, subset, outcome)
    components = decompose(interaction_graph(instance.cost))
    schedule = layer_schedule(instance)
    result = 1.0
    for component in components:
        local = {v: constraints[v] for v in component.vertices if v in constraints}
        if local:
            result *= component_marginal(component, schedule, local)
    logger.debug("marginal over %d constrained qubits: %.17g", len(constraints), result)
    return result
