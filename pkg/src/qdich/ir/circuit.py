"""Gate and circuit data model.

Qubit indices are 0-based. In amplitude indexing qubit 0 is the most
significant bit, and in printed bitstrings it is the leftmost character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np


class GateKind(str, Enum):
    H = "H"
    TDG = "Tdg"
    CZ = "CZ"
    PHASE_DIAG1 = "PhaseDiag1"
    PHASE_DIAG2 = "PhaseDiag2"
    XROT = "XRot"
    GENERAL_DIAG1 = "GeneralDiag1"
    GENERAL_DIAG2 = "GeneralDiag2"


class Prep(str, Enum):
    ZERO = "zero"
    PLUS = "plus"


_ARITY = {
    GateKind.H: 1,
    GateKind.TDG: 1,
    GateKind.CZ: 2,
    GateKind.PHASE_DIAG1: 1,
    GateKind.PHASE_DIAG2: 2,
    GateKind.XROT: 1,
    GateKind.GENERAL_DIAG1: 1,
    GateKind.GENERAL_DIAG2: 2,
}

_DIAGONAL = {
    GateKind.TDG,
    GateKind.CZ,
    GateKind.PHASE_DIAG1,
    GateKind.PHASE_DIAG2,
    GateKind.GENERAL_DIAG1,
    GateKind.GENERAL_DIAG2,
}

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class Gate:
    """A gate of the fixed vocabulary.

    PhaseDiag params are residues d in {0..7} meaning diag(e^{-i pi d/4});
    XRot(angle) is e^{-i angle X}; GeneralDiag params are unit complex entries.
    Diagonal entries of two-qubit gates are indexed 2*bit(qubits[0]) + bit(qubits[1]).
    """

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple = ()

    def __post_init__(self) -> None:
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != _ARITY[kind]:
            raise ValueError(f"{kind.value} acts on {_ARITY[kind]} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{kind.value} qubits must be distinct, got {self.qubits}")
        if kind in (GateKind.PHASE_DIAG1, GateKind.PHASE_DIAG2):
            residues = tuple(int(d) % 8 for d in self.params)
            if len(residues) != 2 ** _ARITY[kind]:
                raise ValueError(f"{kind.value} needs {2 ** _ARITY[kind]} residues")
            object.__setattr__(self, "params", residues)
        elif kind in (GateKind.GENERAL_DIAG1, GateKind.GENERAL_DIAG2):
            entries = tuple(complex(e) for e in self.params)
            if len(entries) != 2 ** _ARITY[kind]:
                raise ValueError(f"{kind.value} needs {2 ** _ARITY[kind]} entries")
            if any(abs(abs(e) - 1.0) > 1e-9 for e in entries):
                raise ValueError(f"{kind.value} entries must have unit modulus")
            object.__setattr__(self, "params", entries)
        elif kind == GateKind.XROT:
            if len(self.params) != 1:
                raise ValueError("XRot takes exactly one angle")
            object.__setattr__(self, "params", (float(self.params[0]),))
        elif self.params:
            raise ValueError(f"{kind.value} takes no parameters")

    @classmethod
    def h(cls, q: int) -> Gate:
        return cls(GateKind.H, (q,))

    @classmethod
    def tdg(cls, q: int) -> Gate:
        return cls(GateKind.TDG, (q,))

    @classmethod
    def cz(cls, a: int, b: int) -> Gate:
        return cls(GateKind.CZ, (a, b))

    @classmethod
    def xrot(cls, q: int, angle: float) -> Gate:
        return cls(GateKind.XROT, (q,), (angle,))

    @classmethod
    def phase_diag(cls, qubits: Sequence[int], residues: Sequence[int]) -> Gate:
        kind = GateKind.PHASE_DIAG1 if len(qubits) == 1 else GateKind.PHASE_DIAG2
        return cls(kind, tuple(qubits), tuple(residues))

    @classmethod
    def general_diag(cls, qubits: Sequence[int], entries: Sequence[complex]) -> Gate:
        kind = GateKind.GENERAL_DIAG1 if len(qubits) == 1 else GateKind.GENERAL_DIAG2
        return cls(kind, tuple(qubits), tuple(entries))

    @property
    def is_diagonal(self) -> bool:
        return self.kind in _DIAGONAL

    @property
    def arity(self) -> int:
        return len(self.qubits)

    def phase_residues(self) -> tuple[int, ...] | None:
        """Diagonal as residues d (entry e^{-i pi d/4}), or None if not an eighth-root diagonal."""
        if self.kind == GateKind.TDG:
            return (0, 1)
        if self.kind == GateKind.CZ:
            return (0, 0, 0, 4)
        if self.kind in (GateKind.PHASE_DIAG1, GateKind.PHASE_DIAG2):
            return self.params
        return None

    def diagonal(self) -> np.ndarray:
        if not self.is_diagonal:
            raise ValueError(f"{self.kind.value} is not diagonal")
        residues = self.phase_residues()
        if residues is not None:
            return np.exp(-1j * math.pi / 4 * np.array(residues, dtype=float))
        return np.array(self.params, dtype=complex)

    def matrix(self) -> np.ndarray:
        """Dense complex matrix in the basis ordered by ``qubits``."""
        if self.is_diagonal:
            return np.diag(self.diagonal())
        if self.kind == GateKind.H:
            return _HADAMARD.copy()
        angle = self.params[0]
        c, s = math.cos(angle), math.sin(angle)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.kind == GateKind.XROT:
            return f"XRot({self.params[0]:.6g})[{args}]"
        if self.params and self.kind in (GateKind.PHASE_DIAG1, GateKind.PHASE_DIAG2):
            return f"{self.kind.value}{self.params}[{args}]"
        return f"{self.kind.value}[{args}]"


def eighth_root_multiple(angle: float, tol: float = 1e-12) -> int | None:
    """Return m with angle = m*pi/4 (within tol), else None."""
    m = round(angle / (math.pi / 4))
    if abs(angle - m * math.pi / 4) <= tol:
        return int(m)
    return None


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list with preparation, post-selection register and output map.

    ``post_select_at[q]`` is the number of gates preceding the projection of
    qubit ``q`` onto 0; no gate at or after that position may touch ``q``.
    """

    n_qubits: int
    prep: tuple[Prep, ...]
    gates: tuple[Gate, ...] = ()
    post_select: frozenset[int] = frozenset()
    output_map: Mapping[int, int] = field(default_factory=dict)
    post_select_at: Mapping[int, int] = field(default_factory=dict)

    @classmethod
    def create(
        cls,
        n_qubits: int,
        gates: Iterable[Gate] = (),
        prep: Sequence[Prep | str] | Prep | str = Prep.ZERO,
        post_select: Iterable[int] = (),
        output_map: Mapping[int, int] | None = None,
        post_select_at: Mapping[int, int] | None = None,
    ) -> Circuit:
        gates = tuple(gates)
        if isinstance(prep, (Prep, str)):
            prep = [prep] * n_qubits
        prep = tuple(Prep(p) for p in prep)
        post = frozenset(int(q) for q in post_select)
        if output_map is None:
            live = [q for q in range(n_qubits) if q not in post]
            output_map = {i: q for i, q in enumerate(live)}
        at = {q: len(gates) for q in post}
        if post_select_at:
            at.update({int(q): int(v) for q, v in post_select_at.items()})
        return cls(
            n_qubits=n_qubits,
            prep=prep,
            gates=gates,
            post_select=post,
            output_map={int(k): int(v) for k, v in output_map.items()},
            post_select_at=at,
        )

    def projection_point(self, q: int) -> int:
        return self.post_select_at.get(q, len(self.gates))

    @property
    def output_wires(self) -> list[int]:
        return sorted(self.output_map)

    @property
    def output_qubits(self) -> list[int]:
        return [self.output_map[w] for w in self.output_wires]

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for gate in self.gates:
            counts[gate.kind.value] = counts.get(gate.kind.value, 0) + 1
        return counts


def validate(circuit: Circuit) -> list[str]:
    """Return a list of invariant violations; empty when the circuit is well formed."""
    violations: list[str] = []
    n = circuit.n_qubits
    if n <= 0:
        violations.append(f"n_qubits must be positive, got {n}")
    if len(circuit.prep) != n:
        violations.append(f"prep has {len(circuit.prep)} entries for {n} qubits")

    for index, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            if not 0 <= q < n:
                violations.append(f"gate {index} {gate}: qubit {q} out of range [0, {n})")
            elif q in circuit.post_select and index >= circuit.projection_point(q):
                violations.append(
                    f"gate {index} {gate}: acts on qubit {q} after its post-selection"
                )

    for q in circuit.post_select:
        if not 0 <= q < n:
            violations.append(f"post-selected qubit {q} out of range [0, {n})")
    for q, at in circuit.post_select_at.items():
        if q not in circuit.post_select:
            violations.append(f"projection point given for qubit {q} which is not post-selected")
        elif not 0 <= at <= len(circuit.gates):
            violations.append(f"projection point {at} of qubit {q} out of range")

    targets = list(circuit.output_map.values())
    if len(set(targets)) != len(targets):
        violations.append("output_map is not injective")
    for wire, q in circuit.output_map.items():
        if not 0 <= q < n:
            violations.append(f"output wire {wire} maps to out-of-range qubit {q}")
        elif q in circuit.post_select:
            violations.append(f"output wire {wire} maps to post-selected qubit {q}")
    return violations
