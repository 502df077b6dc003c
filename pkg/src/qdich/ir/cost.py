"""2-local cost functions and QAOA instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from qdich.ir.circuit import Circuit, Gate, Prep, eighth_root_multiple


@dataclass(frozen=True)
class Term:
    """Value table on a support of one or two variables.

    ``table[i]`` is the value for the assignment whose bits, read with
    ``support[0]`` most significant, spell ``i``.
    """

    support: tuple[int, ...]
    table: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", tuple(int(v) for v in self.support))
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.support) not in (1, 2):
            raise ValueError(f"term support must have 1 or 2 variables, got {self.support}")
        if len(set(self.support)) != len(self.support):
            raise ValueError(f"term support must be distinct, got {self.support}")
        if len(self.table) != 2 ** len(self.support):
            raise ValueError(
                f"table of a {len(self.support)}-variable term needs "
                f"{2 ** len(self.support)} entries, got {len(self.table)}"
            )

    @property
    def is_integer(self) -> bool:
        return all(float(v).is_integer() for v in self.table)

    def value(self, bits: Sequence[int]) -> float:
        """Value on a full assignment indexed by variable."""
        index = 0
        for v in self.support:
            index = 2 * index + int(bits[v])
        return self.table[index]

    def depends_on(self, position: int) -> bool:
        """True when flipping the variable at ``position`` of the support can change the value."""
        k = len(self.support)
        shift = k - 1 - position
        return any(self.table[i] != self.table[i ^ (1 << shift)] for i in range(2**k))

    def oriented(self, first: int) -> tuple[float, ...]:
        """Two-variable table re-indexed so that ``first`` is the most significant bit."""
        if self.support[0] == first:
            return self.table
        t = self.table
        return (t[0], t[2], t[1], t[3])


@dataclass(frozen=True)
class CostFunction:
    n_vars: int
    terms: tuple[Term, ...]
    integer_valued: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.n_vars <= 0:
            raise ValueError("n_vars must be positive")
        for term in self.terms:
            if any(not 0 <= v < self.n_vars for v in term.support):
                raise ValueError(f"term support {term.support} out of range [0, {self.n_vars})")
        if self.integer_valued:
            if not all(term.is_integer for term in self.terms):
                raise ValueError("integer_valued cost has a non-integer table entry")
            ints = tuple(Term(t.support, tuple(int(v) for v in t.table)) for t in self.terms)
            object.__setattr__(self, "terms", ints)

    def evaluate(self, bits: Sequence[int]) -> float:
        return sum(term.value(bits) for term in self.terms)

    def values(self) -> list[float]:
        """C(z) for every z, indexed with variable 0 most significant."""
        return [self.evaluate(bits) for bits in product((0, 1), repeat=self.n_vars)]


@dataclass(frozen=True)
class QaoaInstance:
    """Depth-p QAOA on n qubits with mixer B = sum_j X_j, optionally post-selected."""

    n: int
    p: int
    cost: CostFunction
    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    post_select: frozenset[int] = frozenset()
    output_map: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        object.__setattr__(self, "post_select", frozenset(int(q) for q in self.post_select))
        if self.cost.n_vars != self.n:
            raise ValueError(f"cost has {self.cost.n_vars} variables for {self.n} qubits")
        if self.p < 0 or len(self.gammas) != self.p or len(self.betas) != self.p:
            raise ValueError(f"depth {self.p} needs exactly {self.p} gammas and betas")
        if not self.output_map:
            live = [q for q in range(self.n) if q not in self.post_select]
            object.__setattr__(self, "output_map", {i: q for i, q in enumerate(live)})
        else:
            object.__setattr__(
                self, "output_map", {int(k): int(v) for k, v in self.output_map.items()}
            )


def qaoa_to_circuit(instance: QaoaInstance) -> Circuit:
    """Expand an instance into phase gates per term and an XRot layer per depth step.

    Integer-valued costs at gamma = m*pi/4 give PhaseDiag gates, which the exact
    backend accepts; everything else becomes GeneralDiag.
    """
    gates: list[Gate] = []
    cost = instance.cost
    for gamma, beta in zip(instance.gammas, instance.betas):
        m = eighth_root_multiple(gamma) if cost.integer_valued else None
        for term in cost.terms:
            if m is not None:
                residues = [(m * int(v)) % 8 for v in term.table]
                gates.append(Gate.phase_diag(term.support, residues))
            else:
                entries = [complex(math.cos(gamma * v), -math.sin(gamma * v)) for v in term.table]
                gates.append(Gate.general_diag(term.support, entries))
        gates.extend(Gate.xrot(q, beta) for q in range(instance.n))
    return Circuit.create(
        instance.n,
        gates,
        prep=Prep.PLUS,
        post_select=instance.post_select,
        output_map=instance.output_map,
    )


@dataclass(frozen=True)
class IqpInstance:
    """Post-selected IQP circuit H^n . exp(-i pi/4 D) . H^n |0^n> with integer diagonal cost D."""

    n: int
    cost: CostFunction
    post_select: frozenset[int] = frozenset()
    output_map: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "post_select", frozenset(int(q) for q in self.post_select))
        if not self.cost.integer_valued:
            raise ValueError("IQP diagonal must be integer-valued")
        if self.cost.n_vars != self.n:
            raise ValueError(f"cost has {self.cost.n_vars} variables for {self.n} qubits")
        if not self.output_map:
            live = [q for q in range(self.n) if q not in self.post_select]
            object.__setattr__(self, "output_map", {i: q for i, q in enumerate(live)})

    def to_circuit(self) -> Circuit:
        # The first Hadamard wall is the Plus preparation
        gates = [Gate.phase_diag(t.support, [int(v) % 8 for v in t.table]) for t in self.cost.terms]
        gates.extend(Gate.h(q) for q in range(self.n))
        return Circuit.create(
            self.n,
            gates,
            prep=Prep.PLUS,
            post_select=self.post_select,
            output_map=self.output_map,
        )
