"""Tests for circuits, cost functions, interaction graphs and JSON formats."""

import json
import math

import pytest

from qdich.compiler import hadamard_substitute, preprocess
from qdich.errors import FormatError
from qdich.ir import (
    Circuit,
    CostFunction,
    Gate,
    GateKind,
    IqpInstance,
    Prep,
    QaoaInstance,
    Term,
    interaction_graph,
    qaoa_to_circuit,
    validate,
)
from qdich.ir.formats import (
    circuit_from_dict,
    circuit_to_dict,
    instance_from_dict,
    instance_to_dict,
    iqp_from_dict,
    iqp_to_dict,
    load_document,
)


def test_interaction_graph_drops_uncoupled_pairs():
    """C = z0 z1 + z2 (as tables) has the single edge {0, 1}."""
    cost = CostFunction(3, (Term((0, 1), (0, 0, 0, 1)), Term((2,), (0, 1))))
    graph = interaction_graph(cost)
    assert graph.edges == [(0, 1)]
    assert graph.degree(2) == 0


def test_interaction_graph_ignores_separable_pair_terms():
    """A term on {0, 2} that depends only on z0 does not create an edge."""
    cost = CostFunction(3, (Term((0, 2), (1, 1, 3, 3)),))
    assert interaction_graph(cost).edges == []


def test_interaction_graph_invariant_under_term_splitting():
    whole = CostFunction(2, (Term((0, 1), (0, 0, 0, 2)),))
    split = CostFunction(2, (Term((0, 1), (0, 0, 0, 1)), Term((1, 0), (0, 0, 0, 1))))
    assert interaction_graph(whole).edges == interaction_graph(split).edges


def test_interaction_graph_keeps_terms_on_edges():
    t1 = Term((0, 1), (0, 0, 0, 1))
    t2 = Term((1, 0), (1, 2, 3, 4))
    graph = interaction_graph(CostFunction(2, (t1, t2)))
    assert graph.graph.edges[0, 1]["terms"] == [t1, t2]


def test_term_oriented_swaps_middle_entries():
    term = Term((3, 5), (0, 1, 2, 3))
    assert term.oriented(3) == (0, 1, 2, 3)
    assert term.oriented(5) == (0, 2, 1, 3)


def test_term_rejects_bad_table():
    with pytest.raises(ValueError):
        Term((0, 1), (0, 1))
    with pytest.raises(ValueError):
        Term((1, 1), (0, 0, 0, 0))


def test_cost_evaluate_reads_support_most_significant_first():
    cost = CostFunction(2, (Term((1, 0), (0, 5, 7, 0)),))
    # support (1, 0): index = 2*z1 + z0
    assert cost.evaluate([1, 0]) == 5
    assert cost.evaluate([0, 1]) == 7


def test_constant_term_only_adds_a_phase():
    cost = CostFunction(2, (Term((0,), (3, 3)),))
    assert interaction_graph(cost).edges == []


def test_qaoa_to_circuit_gate_counts():
    cost = CostFunction(3, (Term((0, 1), (0, 0, 0, 1)), Term((1, 2), (0, 1, 1, 0))))
    instance = QaoaInstance(n=3, p=2, cost=cost, gammas=(0.3, 0.4), betas=(0.1, 0.2))
    circuit = qaoa_to_circuit(instance)
    assert len(circuit.gates) == 2 * (2 + 3)
    assert all(p == Prep.PLUS for p in circuit.prep)
    assert circuit.gate_counts() == {"GeneralDiag2": 4, "XRot": 6}


def test_qaoa_to_circuit_depth_zero_is_empty():
    cost = CostFunction(2, (Term((0, 1), (0, 0, 0, 1)),))
    instance = QaoaInstance(n=2, p=0, cost=cost, gammas=(), betas=())
    assert qaoa_to_circuit(instance).gates == ()


def test_qaoa_to_circuit_uses_phase_gates_for_integer_costs():
    cost = CostFunction(2, (Term((0, 1), (0, 6, 0, 2)),), integer_valued=True)
    instance = QaoaInstance(n=2, p=1, cost=cost, gammas=(math.pi / 4,), betas=(math.pi / 4,))
    gates = qaoa_to_circuit(instance).gates
    assert gates[0].kind == GateKind.PHASE_DIAG2
    assert gates[0].params == (0, 6, 0, 2)

    doubled = QaoaInstance(n=2, p=1, cost=cost, gammas=(math.pi / 2,), betas=(0.0,))
    assert qaoa_to_circuit(doubled).gates[0].params == (0, 4, 0, 4)


def test_instance_rejects_mismatched_angles():
    cost = CostFunction(1, ())
    with pytest.raises(ValueError):
        QaoaInstance(n=1, p=2, cost=cost, gammas=(0.1,), betas=(0.1, 0.2))


def test_default_output_map_skips_post_selected_qubits():
    circuit = Circuit.create(3, [Gate.h(0)], post_select=[1])
    assert circuit.output_map == {0: 0, 1: 2}
    assert circuit.output_qubits == [0, 2]


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate.cz(1, 1)
    with pytest.raises(ValueError):
        Gate(GateKind.H, (0,), (1,))
    with pytest.raises(ValueError):
        Gate.general_diag((0,), [1, 2])
    assert Gate.phase_diag((0,), (9, -1)).params == (1, 7)


def test_gate_matrices():
    assert Gate.tdg(0).diagonal()[1] == pytest.approx(complex(math.sqrt(0.5), -math.sqrt(0.5)))
    xrot = Gate.xrot(0, math.pi / 2).matrix()
    assert xrot[0, 1] == pytest.approx(-1j)
    assert not Gate.h(0).is_diagonal


def test_validate_accepts_substituted_wire():
    """Plus prep with H Tdg H Tdg H P H XRot compiles to a valid post-selected circuit."""
    pre = preprocess(Circuit.create(1, [Gate.tdg(0), Gate.h(0), Gate.tdg(0)]))
    substituted, _ = hadamard_substitute(pre)
    assert validate(substituted) == []


def test_validate_reports_gate_after_projection():
    circuit = Circuit.create(2, [Gate.h(0), Gate.h(0)], post_select=[0], post_select_at={0: 1})
    problems = validate(circuit)
    assert len(problems) == 1
    assert "after its post-selection" in problems[0]


def test_validate_reports_bad_output_map():
    circuit = Circuit.create(2, [], post_select=[1], output_map={0: 1})
    assert any("post-selected" in v for v in validate(circuit))
    circuit = Circuit.create(2, [], output_map={0: 1, 1: 1})
    assert any("injective" in v for v in validate(circuit))


def test_validate_reports_out_of_range_qubit():
    circuit = Circuit.create(1, [Gate.cz(0, 1)])
    assert validate(circuit)


def test_circuit_round_trip_through_dict():
    circuit = Circuit.create(
        2,
        [Gate.h(0), Gate.general_diag((0, 1), [1, 1j, -1, -1j]), Gate.xrot(1, 0.25)],
        prep=[Prep.ZERO, Prep.PLUS],
    )
    data = json.loads(json.dumps(circuit_to_dict(circuit)))
    assert data["format"] == "qdich-v1"
    assert circuit_from_dict(data) == circuit


def test_instance_round_trip_through_dict():
    cost = CostFunction(2, (Term((0, 1), (0, 1, 2, 3)), Term((1,), (4, 5))), integer_valued=True)
    instance = QaoaInstance(
        n=2,
        p=1,
        cost=cost,
        gammas=(math.pi / 4,),
        betas=(math.pi / 4,),
        post_select=frozenset({0}),
    )
    data = json.loads(json.dumps(instance_to_dict(instance)))
    assert instance_from_dict(data) == instance


def test_load_document_dispatches_on_shape():
    circuit_text = json.dumps({"format": "qdich-v1", "n": 1, "prep": ["zero"], "gates": []})
    assert isinstance(load_document(circuit_text), Circuit)

    instance_text = json.dumps(
        {"format": "qdich-v1", "n": 1, "p": 1, "terms": [], "gammas": [0.1], "betas": [0.2]}
    )
    assert isinstance(load_document(instance_text), QaoaInstance)

    cost = CostFunction(1, (Term((0,), (0, 1)),), integer_valued=True)
    iqp_text = json.dumps(iqp_to_dict(IqpInstance(n=1, cost=cost)))
    assert isinstance(load_document(iqp_text), IqpInstance)


def test_load_document_rejects_missing_tag():
    with pytest.raises(FormatError):
        load_document(json.dumps({"n": 1, "prep": ["zero"]}))


def test_load_document_rejects_malformed_json():
    with pytest.raises(FormatError):
        load_document("{not json")
    with pytest.raises(FormatError):
        load_document("[]")


def test_load_document_rejects_bad_gate():
    text = json.dumps(
        {
            "format": "qdich-v1",
            "n": 1,
            "prep": ["zero"],
            "gates": [{"kind": "CZ", "qubits": [0]}],
        }
    )
    with pytest.raises(FormatError):
        load_document(text)


def test_declared_integer_table_with_fraction_is_rejected():
    data = {
        "format": "qdich-v1",
        "n": 1,
        "p": 1,
        "terms": [{"support": [0], "table": [0, 0.5]}],
        "gammas": [0.1],
        "betas": [0.2],
        "integer_valued": True,
    }
    with pytest.raises(FormatError, match="non-integer"):
        instance_from_dict(data)
    with pytest.raises(FormatError, match="non-integer"):
        iqp_from_dict({"format": "qdich-v1", "kind": "iqp", "n": 1, "terms": data["terms"]})


def test_declared_integer_table_keeps_integral_values():
    data = {
        "format": "qdich-v1",
        "n": 1,
        "p": 1,
        "terms": [{"support": [0], "table": [0.0, 3.0]}],
        "gammas": [0.1],
        "betas": [0.2],
        "integer_valued": True,
    }
    table = instance_from_dict(data).cost.terms[0].table
    assert table == (0, 3)
    assert all(isinstance(v, int) for v in table)
