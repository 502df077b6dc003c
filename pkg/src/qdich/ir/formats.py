"""JSON file formats (``"format": "qdich-v1"``), parsed and validated with pydantic.

Qubit indices are 0-based; in bitstrings qubit 0 is leftmost.
"""

from __future__ import annotations

import json
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from qdich.config import FORMAT_TAG
from qdich.errors import FormatError
from qdich.ir.circuit import Circuit, Gate, GateKind, Prep
from qdich.ir.cost import CostFunction, IqpInstance, QaoaInstance, Term


class GateModel(BaseModel):
    kind: GateKind
    qubits: list[int]
    params: list[Union[int, float, list[float]]] = Field(default_factory=list)


class CircuitModel(BaseModel):
    format: Literal["qdich-v1"] = FORMAT_TAG
    n: int = Field(gt=0)
    prep: list[Prep]
    gates: list[GateModel] = Field(default_factory=list)
    post_select: list[int] = Field(default_factory=list)
    output_map: dict[str, int] = Field(default_factory=dict)
    post_select_at: dict[str, int] = Field(default_factory=dict)


class TermModel(BaseModel):
    support: list[int]
    table: list[float]


class InstanceModel(BaseModel):
    format: Literal["qdich-v1"] = FORMAT_TAG
    n: int = Field(gt=0)
    p: int = Field(ge=0)
    terms: list[TermModel] = Field(default_factory=list)
    gammas: list[float] = Field(default_factory=list)
    betas: list[float] = Field(default_factory=list)
    post_select: list[int] = Field(default_factory=list)
    output_map: dict[str, int] = Field(default_factory=dict)
    integer_valued: Optional[bool] = None


class IqpModel(BaseModel):
    format: Literal["qdich-v1"] = FORMAT_TAG
    kind: Literal["iqp"] = "iqp"
    n: int = Field(gt=0)
    terms: list[TermModel] = Field(default_factory=list)
    post_select: list[int] = Field(default_factory=list)
    output_map: dict[str, int] = Field(default_factory=dict)


def _gate_from_model(model: GateModel) -> Gate:
    if model.kind in (GateKind.GENERAL_DIAG1, GateKind.GENERAL_DIAG2):
        params = []
        for entry in model.params:
            if not isinstance(entry, list) or len(entry) != 2:
                raise FormatError(f"{model.kind.value} entries must be [re, im] pairs")
            params.append(complex(entry[0], entry[1]))
        return Gate(model.kind, tuple(model.qubits), tuple(params))
    return Gate(model.kind, tuple(model.qubits), tuple(model.params))


def _gate_to_model(gate: Gate) -> GateModel:
    if gate.kind in (GateKind.GENERAL_DIAG1, GateKind.GENERAL_DIAG2):
        params = [[e.real, e.imag] for e in gate.params]
    else:
        params = list(gate.params)
    return GateModel(kind=gate.kind, qubits=list(gate.qubits), params=params)


def _terms(models: list[TermModel]) -> list[Term]:
    # CostFunction converts integer tables and rejects fractional ones
    return [Term(tuple(t.support), tuple(t.table)) for t in models]


def _term_models(cost: CostFunction) -> list[TermModel]:
    return [TermModel(support=list(t.support), table=list(t.table)) for t in cost.terms]


def circuit_from_dict(data: dict) -> Circuit:
    try:
        model = CircuitModel.model_validate(data)
        return Circuit.create(
            model.n,
            [_gate_from_model(g) for g in model.gates],
            prep=model.prep,
            post_select=model.post_select,
            output_map={int(k): v for k, v in model.output_map.items()} or None,
            post_select_at={int(k): v for k, v in model.post_select_at.items()},
        )
    except (ValidationError, ValueError) as e:
        raise FormatError(f"invalid circuit file: {e}") from e


def circuit_to_dict(circuit: Circuit) -> dict:
    model = CircuitModel(
        n=circuit.n_qubits,
        prep=list(circuit.prep),
        gates=[_gate_to_model(g) for g in circuit.gates],
        post_select=sorted(circuit.post_select),
        output_map={str(k): v for k, v in sorted(circuit.output_map.items())},
        post_select_at={
            str(q): at
            for q, at in sorted(circuit.post_select_at.items())
            if at != len(circuit.gates)
        },
    )
    return model.model_dump(mode="json")


def instance_from_dict(data: dict) -> QaoaInstance:
    try:
        model = InstanceModel.model_validate(data)
        if model.integer_valued is None:
            integer_valued = all(float(v).is_integer() for t in model.terms for v in t.table)
        else:
            integer_valued = model.integer_valued
        cost = CostFunction(model.n, tuple(_terms(model.terms)), integer_valued)
        return QaoaInstance(
            n=model.n,
            p=model.p,
            cost=cost,
            gammas=tuple(model.gammas),
            betas=tuple(model.betas),
            post_select=frozenset(model.post_select),
            output_map={int(k): v for k, v in model.output_map.items()},
        )
    except (ValidationError, ValueError) as e:
        raise FormatError(f"invalid instance file: {e}") from e


def instance_to_dict(instance: QaoaInstance) -> dict:
    model = InstanceModel(
        n=instance.n,
        p=instance.p,
        terms=_term_models(instance.cost),
        gammas=list(instance.gammas),
        betas=list(instance.betas),
        post_select=sorted(instance.post_select),
        output_map={str(k): v for k, v in sorted(instance.output_map.items())},
        integer_valued=instance.cost.integer_valued,
    )
    return model.model_dump(mode="json")


def iqp_from_dict(data: dict) -> IqpInstance:
    try:
        model = IqpModel.model_validate(data)
        cost = CostFunction(model.n, tuple(_terms(model.terms)), True)
        return IqpInstance(
            n=model.n,
            cost=cost,
            post_select=frozenset(model.post_select),
            output_map={int(k): v for k, v in model.output_map.items()},
        )
    except (ValidationError, ValueError) as e:
        raise FormatError(f"invalid IQP file: {e}") from e


def iqp_to_dict(instance: IqpInstance) -> dict:
    model = IqpModel(
        n=instance.n,
        terms=_term_models(instance.cost),
        post_select=sorted(instance.post_select),
        output_map={str(k): v for k, v in sorted(instance.output_map.items())},
    )
    return model.model_dump(mode="json")


def load_document(text: str) -> Circuit | QaoaInstance | IqpInstance:
    """Parse any qdich JSON document, dispatching on its shape."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise FormatError("top-level JSON value must be an object")
    if data.get("format") != FORMAT_TAG:
        raise FormatError(f"missing or unknown format tag (expected {FORMAT_TAG!r})")
    if data.get("kind") == "iqp":
        return iqp_from_dict(data)
    if "gates" in data or "prep" in data:
        return circuit_from_dict(data)
    if "terms" in data or "p" in data:
        return instance_from_dict(data)
    raise FormatError("document is neither a circuit nor an instance")
