"""Compilation of {H, Tdg, CZ} circuits into post-selected depth-1 QAOA.

Pipeline: ``preprocess`` -> ``hadamard_substitute`` -> ``collect_phases``
(-> ``make_monotone``). The IQP variant swaps the coupling for CZ and the
completion gate for H, and keeps each wire's last Hadamard as the final wall.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from qdich.compiler.monotone import make_monotone
from qdich.errors import (
    FormatError,
    InvariantViolated,
    NonDiagonalResidue,
    UnsupportedGate,
)
from qdich.ir.circuit import Circuit, Gate, GateKind, Prep, eighth_root_multiple
from qdich.ir.cost import CostFunction, IqpInstance, QaoaInstance, Term
from qdich.ir.graph import interaction_graph

logger = logging.getLogger(__name__)

SOURCE_GATES = frozenset({GateKind.H, GateKind.TDG, GateKind.CZ})

# Coupling diag(1, i, 1, -i) as residues, indexed 2*bit(aux) + bit(wire)
COUPLING_RESIDUES = (0, 6, 0, 2)
# e^{i pi Z/4} inside the wire-end identity H~ H~^dagger = H~ H e^{i pi Z/4} H
ENDPOINT_RESIDUES = (7, 1)
QUARTER_TURN = math.pi / 4


@dataclass
class _WireState:
    pending_h: bool
    after_diagonal: bool = False


def _check_source(circuit: Circuit) -> None:
    for index, gate in enumerate(circuit.gates):
        if gate.kind not in SOURCE_GATES:
            raise UnsupportedGate(f"gate {index} {gate}: only H, Tdg and CZ can be compiled")
    if circuit.post_select:
        raise FormatError("the source circuit must not post-select")


def preprocess(circuit: Circuit, iqp: bool = False) -> Circuit:
    """Normalise every wire so that at most one diagonal sits between consecutive Hadamards.

    A |0> preparation becomes |+> with a pending Hadamard, source Hadamards
    toggle the pending flag, and a diagonal first emits the pending H, or H H
    when it directly follows another diagonal on the wire. Each wire then ends
    with H H e^{i pi Z/4} H XRot(pi/4) worth of identity (plain H H for IQP),
    reduced by the same rules.

    Raises:
        UnsupportedGate: the circuit uses a gate outside {H, Tdg, CZ}
    """
    _check_source(circuit)
    wires = [_WireState(pending_h=(p == Prep.ZERO)) for p in circuit.prep]
    out: list[Gate] = []

    def open_for_diagonal(q: int) -> None:
        state = wires[q]
        if state.pending_h:
            out.append(Gate.h(q))
            state.pending_h = False
        elif state.after_diagonal:
            out.extend((Gate.h(q), Gate.h(q)))

    def emit_diagonal(gate: Gate) -> None:
        for q in gate.qubits:
            open_for_diagonal(q)
        out.append(gate)
        for q in gate.qubits:
            wires[q].after_diagonal = True

    for gate in circuit.gates:
        if gate.kind == GateKind.H:
            state = wires[gate.qubits[0]]
            state.pending_h = not state.pending_h
        else:
            emit_diagonal(gate)

    for q, state in enumerate(wires):
        if iqp:
            if not state.pending_h:
                out.append(Gate.h(q))
            out.append(Gate.h(q))
            continue
        state.pending_h = not state.pending_h
        emit_diagonal(Gate.phase_diag((q,), ENDPOINT_RESIDUES))
        out.extend((Gate.h(q), Gate.xrot(q, QUARTER_TURN)))

    logger.debug("preprocess: %d source gates -> %d gates", len(circuit.gates), len(out))
    return Circuit.create(
        circuit.n_qubits,
        out,
        prep=Prep.PLUS,
        output_map=dict(circuit.output_map),
    )


@dataclass
class WireChain:
    """Physical qubits each logical wire occupies, in order.

    ``couplings[w]`` lists, per substitution on wire ``w``, the gate position
    of the coupling and the (old, new) physical qubits it links.
    """

    chains: dict[int, list[int]] = field(default_factory=dict)
    couplings: dict[int, list[tuple[int, int, int]]] = field(default_factory=dict)

    def current(self, wire: int) -> int:
        return self.chains[wire][-1]

    def relocate(self, wire: int, position: int, qubit: int) -> None:
        self.couplings[wire].append((position, self.current(wire), qubit))
        self.chains[wire].append(qubit)

    @property
    def auxiliary_count(self) -> int:
        return sum(len(chain) - 1 for chain in self.chains.values())


def _final_hadamards(circuit: Circuit) -> set[int]:
    last: dict[int, int] = {}
    for index, gate in enumerate(circuit.gates):
        if gate.kind == GateKind.H:
            last[gate.qubits[0]] = index
    return set(last.values())


def hadamard_substitute(preprocessed: Circuit, iqp: bool = False) -> tuple[Circuit, WireChain]:
    """Replace every intermediate Hadamard by a coupling to a fresh |+> auxiliary.

    On wire qubit j the Hadamard becomes W on (a, j), the completion gate on j
    and the projection of j onto 0; the wire continues on a and later gates on
    the wire are re-targeted there. With ``iqp`` the coupling is CZ, the
    completion gate H, and each wire's last Hadamard stays as the final wall.

    Raises:
        InvariantViolated: two diagonals meet on a wire without a Hadamard between them
    """
    if any(p != Prep.PLUS for p in preprocessed.prep):
        raise InvariantViolated("substitution expects an all-|+> preparation")
    if preprocessed.post_select:
        raise InvariantViolated("substitution expects a circuit without post-selection")

    n = preprocessed.n_qubits
    walls = _final_hadamards(preprocessed) if iqp else set()
    wiring = WireChain({w: [w] for w in range(n)}, {w: [] for w in range(n)})
    after_diagonal = [False] * n
    next_qubit = n
    gates: list[Gate] = []
    post_select_at: dict[int, int] = {}

    for index, gate in enumerate(preprocessed.gates):
        if gate.kind == GateKind.H:
            wire = gate.qubits[0]
            j = wiring.current(wire)
            if index in walls:
                gates.append(Gate.h(j))
                continue
            a = next_qubit
            next_qubit += 1
            if iqp:
                gates.extend((Gate.cz(a, j), Gate.h(j)))
            else:
                gates.append(Gate.phase_diag((a, j), COUPLING_RESIDUES))
                gates.append(Gate.xrot(j, QUARTER_TURN))
            post_select_at[j] = len(gates)
            wiring.relocate(wire, len(gates) - 2, a)
            after_diagonal[wire] = False
        elif gate.is_diagonal:
            for wire in gate.qubits:
                if after_diagonal[wire]:
                    raise InvariantViolated(
                        f"gate {index} {gate}: diagonal follows a diagonal on wire {wire}"
                    )
                after_diagonal[wire] = True
            qubits = tuple(wiring.current(w) for w in gate.qubits)
            gates.append(Gate(gate.kind, qubits, gate.params))
        else:
            gates.append(Gate(gate.kind, (wiring.current(gate.qubits[0]),), gate.params))

    output_map = {i: wiring.current(w) for i, w in preprocessed.output_map.items()}
    logger.info(
        "hadamard substitution: %d auxiliaries on %d wires", next_qubit - n, n
    )
    circuit = Circuit.create(
        next_qubit,
        gates,
        prep=Prep.PLUS,
        post_select=post_select_at,
        output_map=output_map,
        post_select_at=post_select_at,
    )
    return circuit, wiring


def _phase_term(gate: Gate) -> Term:
    residues = gate.phase_residues()
    if residues is None:
        raise InvariantViolated(f"{gate} is not an eighth-root phase gate")
    return Term(gate.qubits, residues)


def collect_phases(substituted: Circuit) -> QaoaInstance:
    """Gather the diagonal gates into one integer cost; depth 1 with gamma = beta = pi/4.

    Raises:
        NonDiagonalResidue: a Hadamard remains, or a diagonal follows a qubit's XRot
        InvariantViolated: a qubit lacks its single trailing XRot(pi/4)
    """
    terms: list[Term] = []
    rotated: set[int] = set()
    for index, gate in enumerate(substituted.gates):
        if gate.kind == GateKind.H:
            raise NonDiagonalResidue(f"gate {index}: Hadamard left after substitution")
        if gate.kind == GateKind.XROT:
            q = gate.qubits[0]
            if eighth_root_multiple(gate.params[0]) != 1:
                raise InvariantViolated(f"gate {index} {gate}: mixer angle is not pi/4")
            if q in rotated:
                raise InvariantViolated(f"gate {index}: qubit {q} rotated twice")
            rotated.add(q)
            continue
        if rotated.intersection(gate.qubits):
            raise NonDiagonalResidue(f"gate {index} {gate}: diagonal after the mixer")
        terms.append(_phase_term(gate))

    missing = set(range(substituted.n_qubits)) - rotated
    if missing:
        raise InvariantViolated(f"qubits {sorted(missing)} have no trailing XRot(pi/4)")
    cost = CostFunction(substituted.n_qubits, tuple(terms), integer_valued=True)
    return QaoaInstance(
        n=substituted.n_qubits,
        p=1,
        cost=cost,
        gammas=(QUARTER_TURN,),
        betas=(QUARTER_TURN,),
        post_select=substituted.post_select,
        output_map=dict(substituted.output_map),
    )


def compile(circuit: Circuit, monotone: bool = False) -> QaoaInstance:
    """Compile an {H, Tdg, CZ} circuit into an equivalent post-selected depth-1 QAOA instance.

    The post-selected output distribution of the result equals the output
    distribution of ``circuit`` and its interaction degree is at most 3.
    """
    substituted, _ = hadamard_substitute(preprocess(circuit))
    instance = collect_phases(substituted)
    if monotone:
        instance = QaoaInstance(
            n=instance.n,
            p=instance.p,
            cost=make_monotone(instance.cost),
            gammas=instance.gammas,
            betas=instance.betas,
            post_select=instance.post_select,
            output_map=instance.output_map,
        )
    logger.info(
        "compiled %d qubits into %d (%d post-selected)",
        circuit.n_qubits,
        instance.n,
        len(instance.post_select),
    )
    return instance


def compile_iqp(circuit: Circuit) -> IqpInstance:
    """Compile into H^n . D . H^n with D integer-diagonal, couplings CZ and completion H."""
    substituted, _ = hadamard_substitute(preprocess(circuit, iqp=True), iqp=True)
    terms: list[Term] = []
    walled: set[int] = set()
    for index, gate in enumerate(substituted.gates):
        if gate.kind == GateKind.H:
            q = gate.qubits[0]
            if q in walled:
                raise InvariantViolated(f"gate {index}: qubit {q} has two final Hadamards")
            walled.add(q)
            continue
        if walled.intersection(gate.qubits):
            raise NonDiagonalResidue(f"gate {index} {gate}: diagonal after the final Hadamard")
        terms.append(_phase_term(gate))
    missing = set(range(substituted.n_qubits)) - walled
    if missing:
        raise InvariantViolated(f"qubits {sorted(missing)} have no final Hadamard")
    cost = CostFunction(substituted.n_qubits, tuple(terms), integer_valued=True)
    return IqpInstance(
        n=substituted.n_qubits,
        cost=cost,
        post_select=substituted.post_select,
        output_map=dict(substituted.output_map),
    )


def compile_report(source: Circuit, compiled: QaoaInstance | IqpInstance) -> dict:
    """Sidecar summary of a compilation."""
    graph = interaction_graph(compiled.cost)
    return {
        "n_source": source.n_qubits,
        "n_compiled": compiled.n,
        "auxiliaries": compiled.n - source.n_qubits,
        "post_selection_size": len(compiled.post_select),
        "terms": len(compiled.cost.terms),
        "degree_histogram": {str(d): c for d, c in graph.degree_histogram().items()},
        "max_degree": graph.max_degree,
    }
