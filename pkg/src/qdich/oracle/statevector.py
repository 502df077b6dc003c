"""Brute-force state-vector simulation, exact and floating point.

The exact backend keeps amplitudes in Z[w] (w = e^{i pi/4}) as four integer
coefficient arrays plus one shared exponent E: the true amplitude is
coefficients * 2^(-E/2). Hadamards and odd eighth-turn X rotations raise E by
one instead of putting 1/sqrt(2) into the coefficients. The substitution
1/sqrt(2) = (w - w^3)/2 happens only when a true amplitude is read back.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from qdich.arith import Cyclotomic
from qdich.config import settings
from qdich.errors import ExactBackendUnsupportedGate, FormatError, TooManyQubits
from qdich.ir.circuit import Circuit, Gate, GateKind, Prep, eighth_root_multiple, validate

logger = logging.getLogger(__name__)

Backend = Literal["exact", "float"]
ZOmega = tuple[int, int, int, int]

# Beyond this exponent int64 coefficients could overflow during gate application
_INT64_EXPONENT_LIMIT = 100
# Beyond this exponent squared norms summed over a register could overflow int64
_INT64_NORM_EXPONENT_LIMIT = 34

_ONE: ZOmega = (1, 0, 0, 0)
_MINUS_ONE: ZOmega = (-1, 0, 0, 0)


def _as_integral(x: Cyclotomic) -> ZOmega:
    if not x.is_integral:
        raise ValueError(f"{x} is not in Z[w]")
    return tuple(int(c) for c in x.coef)


def exact_gate(gate: Gate) -> tuple[list, int]:
    """Scaled exact form of a gate.

    Returns ``(entries, e)`` where the true gate equals entries / sqrt(2)^e and
    every entry lies in Z[w]. Diagonal gates return their diagonal, the others a
    2x2 matrix.

    Raises:
        ExactBackendUnsupportedGate: the gate has entries outside Q(w)
    """
    if gate.is_diagonal:
        residues = gate.phase_residues()
        if residues is None:
            raise ExactBackendUnsupportedGate(f"{gate} has entries outside Q(w)")
        return [_as_integral(Cyclotomic.root_power(-d)) for d in residues], 0
    if gate.kind == GateKind.H:
        return [[_ONE, _ONE], [_ONE, _MINUS_ONE]], 1

    m = eighth_root_multiple(gate.params[0])
    if m is None:
        raise ExactBackendUnsupportedGate(f"{gate}: angle is not a multiple of pi/4")
    # e^{-i m pi/4 X} = cos I - i sin X, cos = (w^m + w^-m)/2, -i sin = (w^-m - w^m)/2
    half = Fraction(1, 2)
    c = (Cyclotomic.root_power(m) + Cyclotomic.root_power(-m)) * half
    t = (Cyclotomic.root_power(-m) - Cyclotomic.root_power(m)) * half
    e = 0
    if m % 2:
        c, t = c * Cyclotomic.sqrt2(), t * Cyclotomic.sqrt2()
        e = 1
    c, t = _as_integral(c), _as_integral(t)
    return [[c, t], [t, c]], e


def _zw_scale(a: np.ndarray, s: ZOmega) -> np.ndarray:
    """Multiply a coefficient array (leading axis of length 4) by s in Z[w]."""
    out = np.zeros_like(a)
    for j, sj in enumerate(s):
        if sj == 0:
            continue
        for i in range(4):
            k = i + j
            if k < 4:
                out[k] += sj * a[i]
            else:
                out[k - 4] -= sj * a[i]
    return out


def _zw_norm_squared(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """|x|^2 = s0 + s1*sqrt(2) for every x in a coefficient array."""
    a0, a1, a2, a3 = a[0], a[1], a[2], a[3]
    s0 = a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3
    s1 = a0 * a1 + a1 * a2 + a2 * a3 - a3 * a0
    return s0, s1


def real_quadratic(s0: int, s1: int, exponent: int) -> Cyclotomic:
    """(s0 + s1*sqrt(2)) / 2^exponent as a field element."""
    scale = Fraction(1, 2**exponent)
    return Cyclotomic(s0 * scale, s1 * scale, 0, -s1 * scale)


class _Register:
    """Live qubits of a simulation; axis order follows ``qubits``."""

    def __init__(self, backend: Backend) -> None:
        self.backend = backend
        self.qubits: list[int] = []
        if backend == "exact":
            self.exponent = 0
            self.data = np.array([1, 0, 0, 0], dtype=np.int64)
        else:
            self.data = np.array(1.0 + 0j)

    def _axis(self, q: int) -> int:
        # Exact arrays carry the coefficient axis in front
        offset = 1 if self.backend == "exact" else 0
        return self.qubits.index(q) + offset

    def allocate(self, q: int, prep: Prep) -> None:
        if len(self.qubits) + 1 > settings.max_qubits:
            raise TooManyQubits(
                f"simulation needs more than {settings.max_qubits} live qubits"
            )
        self.qubits.append(q)
        if self.backend == "exact":
            zero = np.zeros_like(self.data)
            if prep == Prep.PLUS:
                self.data = np.stack([self.data, self.data], axis=-1)
                self._bump(1)
            else:
                self.data = np.stack([self.data, zero], axis=-1)
        else:
            if prep == Prep.PLUS:
                vec = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
            else:
                vec = np.array([1.0, 0.0], dtype=complex)
            self.data = np.multiply.outer(self.data, vec)

    def _bump(self, e: int) -> None:
        self.exponent += e
        if self.exponent > _INT64_EXPONENT_LIMIT and self.data.dtype != object:
            logger.debug("exact register switched to arbitrary-precision integers")
            self.data = self.data.astype(object)

    def project_zero(self, q: int) -> None:
        axis = self._axis(q)
        self.data = np.take(self.data, 0, axis=axis)
        self.qubits.remove(q)

    def apply(self, gate: Gate) -> None:
        if self.backend == "exact":
            self._apply_exact(gate)
        else:
            self._apply_float(gate)

    def _apply_float(self, gate: Gate) -> None:
        axes = [self._axis(q) for q in gate.qubits]
        if gate.is_diagonal:
            shape = [1] * self.data.ndim
            for axis in axes:
                shape[axis] = 2
            diag = gate.diagonal().reshape([2] * len(axes))
            # reshape keeps gate-qubit order; align with axis order
            order = np.argsort(axes)
            diag = np.transpose(diag, order).reshape(shape)
            self.data = self.data * diag
            return
        axis = axes[0]
        moved = np.tensordot(gate.matrix(), self.data, axes=([1], [axis]))
        self.data = np.moveaxis(moved, 0, axis)

    def _apply_exact(self, gate: Gate) -> None:
        entries, e = exact_gate(gate)
        axes = [self._axis(q) for q in gate.qubits]
        if gate.is_diagonal:
            out = self.data.copy()
            for index, root in enumerate(entries):
                if root == _ONE:
                    continue
                bits = [(index >> (len(axes) - 1 - k)) & 1 for k in range(len(axes))]
                selector: list = [slice(None)] * self.data.ndim
                for axis, bit in zip(axes, bits):
                    selector[axis] = bit
                selector = tuple(selector)
                out[selector] = _zw_scale(self.data[selector], root)
            self.data = out
            return
        axis = axes[0]
        a0 = np.take(self.data, 0, axis=axis)
        a1 = np.take(self.data, 1, axis=axis)
        (m00, m01), (m10, m11) = entries
        new0 = _zw_scale(a0, m00) + _zw_scale(a1, m01)
        new1 = _zw_scale(a0, m10) + _zw_scale(a1, m11)
        self.data = np.stack([new0, new1], axis=axis)
        if e:
            self._bump(e)

    def weights(self, keep: Sequence[int]):
        """Outcome weights over ``keep`` (in that order), other live qubits summed out.

        Float: an array of probabilities. Exact: arrays (s0, s1) with weight
        (s0 + s1*sqrt(2)) / 2^exponent.
        """
        missing = [q for q in keep if q not in self.qubits]
        if missing:
            raise ValueError(f"qubits {missing} are not live")
        traced = tuple(i for i, q in enumerate(self.qubits) if q not in keep)
        remaining = [q for q in self.qubits if q in keep]
        perm = [remaining.index(q) for q in keep]

        def reduce(values: np.ndarray) -> np.ndarray:
            values = np.asarray(values)
            if traced:
                values = np.asarray(values.sum(axis=traced))
            return np.transpose(values, perm).reshape(-1)

        if self.backend == "float":
            return reduce(np.abs(self.data) ** 2)
        data = self.data
        if self.exponent > _INT64_NORM_EXPONENT_LIMIT and data.dtype != object:
            data = data.astype(object)
        s0, s1 = _zw_norm_squared(data)
        return reduce(s0), reduce(s1)


@dataclass
class StateVector:
    """Final state of a circuit before measurement and post-selection.

    Float: ``amplitudes`` is a complex array of length 2^n. Exact:
    ``amplitudes`` has shape (4, 2^n) holding Z[w] coefficients, and the true
    amplitude is that value times 2^(-exponent/2).
    """

    n_qubits: int
    backend: Backend
    amplitudes: np.ndarray
    exponent: int = 0

    def amplitude(self, index: int) -> complex | Cyclotomic:
        if self.backend == "float":
            return complex(self.amplitudes[index])
        value = Cyclotomic(*(int(c) for c in self.amplitudes[:, index]))
        return value * Cyclotomic.inv_sqrt2() ** self.exponent

    def to_complex(self) -> np.ndarray:
        if self.backend == "float":
            return self.amplitudes.copy()
        basis = np.exp(1j * np.pi / 4 * np.arange(4))
        coef = self.amplitudes.astype(float)
        return (basis @ coef) * 2.0 ** (-self.exponent / 2)

    def norm_squared(self) -> float | Cyclotomic:
        if self.backend == "float":
            return float(np.sum(np.abs(self.amplitudes) ** 2))
        data = self.amplitudes.astype(object)
        s0, s1 = _zw_norm_squared(data)
        return real_quadratic(int(s0.sum()), int(s1.sum()), self.exponent)


def _check_circuit(circuit: Circuit) -> None:
    violations = validate(circuit)
    if violations:
        raise FormatError("invalid circuit: " + "; ".join(violations))


def simulate(circuit: Circuit, backend: Backend = "float") -> StateVector:
    """Apply every gate in order to the prepared state.

    Raises:
        TooManyQubits: more than the configured width
        ExactBackendUnsupportedGate: exact backend and a gate outside Q(w)
    """
    _check_circuit(circuit)
    if circuit.n_qubits > settings.max_qubits:
        raise TooManyQubits(
            f"{circuit.n_qubits} qubits exceeds the limit of {settings.max_qubits}"
        )
    register = _Register(backend)
    for q in range(circuit.n_qubits):
        register.allocate(q, circuit.prep[q])
    for gate in circuit.gates:
        register.apply(gate)
    logger.debug(
        "simulated %d gates on %d qubits (%s)", len(circuit.gates), circuit.n_qubits, backend
    )
    if backend == "float":
        return StateVector(circuit.n_qubits, backend, register.data.reshape(-1))
    return StateVector(
        circuit.n_qubits,
        backend,
        register.data.reshape(4, -1),
        register.exponent,
    )


def streaming_order(gates: Sequence[Gate]) -> list[Gate]:
    """Reorder gates so non-diagonal gates run right after their last blocker.

    Diagonal gates keep their relative order. A non-diagonal single-qubit gate
    is moved back to just after the latest earlier gate on the same qubit;
    every gate it passes acts on other qubits, so the product is unchanged.
    """
    keyed = []
    last_on: dict[int, int] = {}
    for index, gate in enumerate(gates):
        if gate.is_diagonal:
            key = float(index)
        else:
            blocker = max((last_on.get(q, -1) for q in gate.qubits), default=-1)
            key = blocker + 0.5
        for q in gate.qubits:
            last_on[q] = index
        keyed.append((key, index, gate))
    keyed.sort(key=lambda item: (item[0], item[1]))
    return [gate for _, _, gate in keyed]


def run_projected(circuit: Circuit, backend: Backend, keep: Sequence[int]) -> _Register:
    """Simulate with late allocation and early projection of post-selected qubits.

    A qubit enters the register at its first gate and a post-selected qubit is
    projected onto 0 right after its last gate, so the register holds only
    the qubits currently in use. Returns the register holding at least ``keep``.
    """
    _check_circuit(circuit)
    gates = streaming_order(circuit.gates)
    last_touch: dict[int, int] = {}
    for position, gate in enumerate(gates):
        for q in gate.qubits:
            last_touch[q] = position

    register = _Register(backend)
    live: set[int] = set()
    peak = 0
    for position, gate in enumerate(gates):
        for q in gate.qubits:
            if q not in live:
                register.allocate(q, circuit.prep[q])
                live.add(q)
        peak = max(peak, len(live))
        register.apply(gate)
        for q in gate.qubits:
            if q in circuit.post_select and last_touch[q] == position:
                register.project_zero(q)
                live.discard(q)

    for q in range(circuit.n_qubits):
        if q in last_touch:
            continue
        if q in circuit.post_select or q in keep:
            register.allocate(q, circuit.prep[q])
            if q in circuit.post_select:
                register.project_zero(q)
    logger.debug(
        "projected run: %d gates, %d qubits, peak width %d", len(gates), circuit.n_qubits, peak
    )
    return register
