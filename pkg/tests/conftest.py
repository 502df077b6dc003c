"""Shared fixtures and builders for the qdich test-suite."""

import math
import random
from itertools import product

import pytest

from qdich.ir import Circuit, CostFunction, Gate, QaoaInstance, Term

SOURCE_ALPHABET_1Q = [("H", 0), ("Tdg", 0)]
SOURCE_ALPHABET_2Q = [("H", 0), ("H", 1), ("Tdg", 0), ("Tdg", 1), ("CZ", 0)]


def make_gate(kind: str, q: int) -> Gate:
    if kind == "H":
        return Gate.h(q)
    if kind == "Tdg":
        return Gate.tdg(q)
    return Gate.cz(q, q + 1)


def exhaustive_source_circuits(max_gates: int = 4):
    """Every circuit over {H, Tdg, CZ} on 1 or 2 qubits with at most ``max_gates`` gates."""
    for n, alphabet in ((1, SOURCE_ALPHABET_1Q), (2, SOURCE_ALPHABET_2Q)):
        for length in range(max_gates + 1):
            for word in product(alphabet, repeat=length):
                yield Circuit.create(n, [make_gate(kind, q) for kind, q in word])


def random_source_circuit(rng: random.Random, max_qubits: int = 4, max_gates: int = 6) -> Circuit:
    n = rng.randint(1, max_qubits)
    gates = []
    for _ in range(rng.randint(0, max_gates)):
        kind = rng.choice(["H", "Tdg", "CZ"] if n > 1 else ["H", "Tdg"])
        if kind == "CZ":
            a, b = rng.sample(range(n), 2)
            gates.append(Gate.cz(a, b))
        else:
            gates.append(make_gate(kind, rng.randrange(n)))
    return Circuit.create(n, gates)


def _table(rng: random.Random, size: int) -> tuple:
    return tuple(rng.uniform(-2.0, 2.0) for _ in range(size))


def random_degree2_instance(rng: random.Random, n: int, p: int) -> QaoaInstance:
    """Random instance whose interaction graph mixes isolated vertices, paths and cycles."""
    vertices = list(range(n))
    rng.shuffle(vertices)
    terms = []
    edges = set()
    while vertices:
        kind = rng.choice(["isolated", "path", "cycle"])
        if kind == "cycle" and len(vertices) >= 3:
            size = rng.randint(3, min(6, len(vertices)))
        elif kind == "path" and len(vertices) >= 2:
            size = rng.randint(2, min(6, len(vertices)))
        else:
            kind, size = "isolated", 1
        group, vertices = vertices[:size], vertices[size:]
        pairs = list(zip(group, group[1:]))
        if kind == "cycle":
            pairs.append((group[-1], group[0]))
        for u, v in pairs:
            edges.add(frozenset((u, v)))
            terms.append(Term((u, v), _table(rng, 4)))
            if rng.random() < 0.3:
                terms.append(Term((v, u), _table(rng, 4)))
    for v in range(n):
        if rng.random() < 0.6:
            terms.append(Term((v,), _table(rng, 2)))
    # a separable term on a non-edge pair must not add an edge
    if n >= 2:
        u, v = rng.sample(range(n), 2)
        if frozenset((u, v)) not in edges:
            a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
            terms.append(Term((u, v), (a, a, b, b)))
    return QaoaInstance(
        n=n,
        p=p,
        cost=CostFunction(n, tuple(terms)),
        gammas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
        betas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
    )


def path_instance(n: int, p: int, seed: int = 0) -> QaoaInstance:
    rng = random.Random(seed)
    terms = tuple(Term((v, v + 1), _table(rng, 4)) for v in range(n - 1))
    return QaoaInstance(
        n=n,
        p=p,
        cost=CostFunction(n, terms),
        gammas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
        betas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
    )


def cycle_instance(n: int, p: int, seed: int = 0) -> QaoaInstance:
    rng = random.Random(seed)
    terms = tuple(Term((v, (v + 1) % n), _table(rng, 4)) for v in range(n))
    return QaoaInstance(
        n=n,
        p=p,
        cost=CostFunction(n, terms),
        gammas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
        betas=tuple(rng.uniform(0, 2 * math.pi) for _ in range(p)),
    )


@pytest.fixture
def rng():
    return random.Random(20240617)
