"""Tests for the degree-2 tensor-network simulator and sampler."""

import math
import random
import time
from collections import Counter

import numpy as np
import pytest

from conftest import cycle_instance, path_instance, random_degree2_instance
from qdich.errors import DegreeTooHigh, FormatError, PostSelectionUnsupported
from qdich.ir import CostFunction, QaoaInstance, Term, interaction_graph, qaoa_to_circuit
from qdich.oracle import marginal_oracle, post_selected_distribution
from qdich.tnsim import (
    ChainRuleSampler,
    ComponentKind,
    canonical_ordering,
    component_marginal,
    cut_width,
    decompose,
    layer_schedule,
    marginal,
    sample,
)


def _coupling(u: int, v: int) -> Term:
    return Term((u, v), (0, 0, 0, 1))


def _instance(n: int, terms, p: int = 1, gamma: float = 0.7, beta: float = 0.3) -> QaoaInstance:
    return QaoaInstance(
        n=n, p=p, cost=CostFunction(n, tuple(terms)), gammas=(gamma,) * p, betas=(beta,) * p
    )


def _random_outcome(rng: random.Random, qubits) -> str:
    return "".join(rng.choice("01") for _ in qubits)


def test_decompose_isolated_vertices():
    components = decompose(interaction_graph(CostFunction(5, ())))
    assert [c.kind for c in components] == [ComponentKind.ISOLATED] * 5
    assert [c.vertices for c in components] == [(v,) for v in range(5)]


def test_decompose_path():
    graph = interaction_graph(CostFunction(4, (_coupling(2, 3), _coupling(1, 2))))
    components = decompose(graph)
    assert [c.kind for c in components] == [ComponentKind.ISOLATED, ComponentKind.PATH]
    assert components[1].vertices == (1, 2, 3)


def test_decompose_cycle_starts_at_lowest_toward_lower_neighbour():
    terms = [_coupling(1, 4), _coupling(4, 2), _coupling(2, 3), _coupling(3, 1)]
    components = decompose(interaction_graph(CostFunction(5, terms)))
    cycle = components[1]
    assert cycle.kind == ComponentKind.CYCLE
    assert cycle.vertices == (1, 3, 2, 4)
    assert cycle.edges[-1] == (4, 1)


def test_decompose_rejects_degree_three():
    terms = [_coupling(0, 1), _coupling(0, 2), _coupling(0, 3)]
    with pytest.raises(DegreeTooHigh) as info:
        decompose(interaction_graph(CostFunction(4, terms)))
    assert info.value.vertex == 0
    assert info.value.degree == 3


def test_canonical_ordering_concatenates_components():
    terms = [_coupling(3, 1), _coupling(0, 4)]
    components = decompose(interaction_graph(CostFunction(5, terms)))
    assert canonical_ordering(components) == [0, 4, 1, 3, 2]


@pytest.mark.parametrize("k", range(3, 13))
@pytest.mark.parametrize("p", range(1, 6))
def test_cut_width_of_paths_and_cycles(k, p):
    path = _instance(k, [_coupling(v, v + 1) for v in range(k - 1)], p=p)
    assert cut_width(path).width == p
    assert cut_width(path).edge_width == p
    cycle = _instance(k, [_coupling(v, (v + 1) % k) for v in range(k)], p=p)
    profile = cut_width(cycle)
    assert profile.width == 2 * p
    # the wrap edge crosses every cut
    assert all(d == 2 for d in profile.delta)
    assert profile.edge_width == profile.width


def test_cut_width_rejects_bad_ordering():
    with pytest.raises(FormatError):
        cut_width(_instance(3, []), ordering=[0, 0, 1])


def test_component_marginal_without_constraints_is_one():
    instance = path_instance(4, 2)
    component = decompose(interaction_graph(instance.cost))[0]
    assert component_marginal(component, layer_schedule(instance), {}) == pytest.approx(1.0)


def test_isolated_vertex_without_phase_is_uniform():
    instance = _instance(1, [], p=1, gamma=0.0, beta=0.0)
    component = decompose(interaction_graph(instance.cost))[0]
    assert component_marginal(component, layer_schedule(instance), {0: 1}) == pytest.approx(0.5)


def test_isolated_vertex_matches_oracle():
    cost = CostFunction(1, (Term((0,), (0.3, -1.2)),))
    instance = QaoaInstance(n=1, p=2, cost=cost, gammas=(0.4, 1.1), betas=(0.9, 0.2))
    expected = marginal_oracle(qaoa_to_circuit(instance), [0], "1")
    assert marginal(instance, [0], "1") == pytest.approx(expected, abs=1e-10)


def test_path_of_three_matches_oracle():
    instance = path_instance(3, 1, seed=5)
    circuit = qaoa_to_circuit(instance)
    for bits in ("000", "011", "101", "111"):
        expected = marginal_oracle(circuit, [0, 1, 2], bits)
        assert marginal(instance, [0, 1, 2], bits) == pytest.approx(expected, abs=1e-10)


def test_cycle_of_six_matches_oracle():
    instance = cycle_instance(6, 2, seed=8)
    distribution = post_selected_distribution(qaoa_to_circuit(instance))
    for bits, probability in distribution.probabilities().items():
        assert marginal(instance, range(6), bits) == pytest.approx(probability, abs=1e-10)


def test_mixed_components_full_distribution():
    rng = random.Random(61)
    instance = random_degree2_instance(rng, 10, 2)
    distribution = post_selected_distribution(qaoa_to_circuit(instance))
    for bits in rng.sample(sorted(distribution.weights), 40):
        expected = distribution.probability(bits)
        assert marginal(instance, range(10), bits) == pytest.approx(expected, abs=1e-10)


def test_random_instances_match_oracle():
    rng = random.Random(67)
    for _ in range(100):
        n = rng.randint(1, 14)
        p = rng.randint(1, 3)
        instance = random_degree2_instance(rng, n, p)
        circuit = qaoa_to_circuit(instance)
        full = list(range(n))
        part = rng.sample(full, rng.randint(1, n))
        for subset in (full, part, []):
            bits = _random_outcome(rng, subset)
            expected = marginal_oracle(circuit, subset, bits)
            assert marginal(instance, subset, bits) == pytest.approx(expected, abs=1e-10)


def test_marginals_are_normalised():
    rng = random.Random(71)
    for _ in range(20):
        n = rng.randint(2, 10)
        instance = random_degree2_instance(rng, n, rng.randint(1, 3))
        subset = rng.sample(range(n), rng.randint(0, n - 1))
        t = rng.choice([v for v in range(n) if v not in subset])
        bits = _random_outcome(rng, subset)
        total = sum(marginal(instance, subset + [t], bits + b) for b in "01")
        assert total == pytest.approx(marginal(instance, subset, bits), abs=1e-10)
    assert marginal(instance, [], "") == 1.0


def test_marginal_factorises_over_components():
    terms = [_coupling(0, 1), _coupling(2, 3), _coupling(3, 4), _coupling(4, 2)]
    instance = _instance(5, terms, p=2)
    joint = marginal(instance, [1, 3], "10")
    assert joint == pytest.approx(marginal(instance, [1], "1") * marginal(instance, [3], "0"))


def test_marginal_rejects_post_selection():
    instance = QaoaInstance(
        n=2,
        p=1,
        cost=CostFunction(2, (_coupling(0, 1),)),
        gammas=(0.1,),
        betas=(0.2,),
        post_select=frozenset({1}),
    )
    with pytest.raises(PostSelectionUnsupported):
        marginal(instance, [0], "0")
    with pytest.raises(PostSelectionUnsupported):
        sample(instance, 0, 1)


def test_marginal_rejects_degree_three():
    terms = [_coupling(0, 1), _coupling(0, 2), _coupling(0, 3)]
    with pytest.raises(DegreeTooHigh):
        marginal(_instance(4, terms), [0], "1")
    with pytest.raises(DegreeTooHigh):
        sample(_instance(4, terms), 0, 3)


def test_marginal_rejects_bad_outcome():
    instance = path_instance(3, 1)
    with pytest.raises(FormatError):
        marginal(instance, [0, 1], "1")
    with pytest.raises(FormatError):
        marginal(instance, [0, 7], "10")


def test_sampler_conditionals_multiply_to_marginal():
    rng = random.Random(73)
    for _ in range(10):
        n = rng.randint(2, 12)
        instance = random_degree2_instance(rng, n, rng.randint(1, 3))
        sampler = ChainRuleSampler(instance, seed=rng.randrange(1000))
        for _ in range(5):
            bits, product = sampler.draw()
            assert product == pytest.approx(marginal(instance, range(n), bits), abs=1e-10)


def test_sample_count_zero_and_negative():
    instance = path_instance(3, 1)
    assert sample(instance, 1, 0) == []
    with pytest.raises(FormatError):
        sample(instance, 1, -1)


def test_sample_is_reproducible():
    instance = cycle_instance(5, 2, seed=3)
    assert sample(instance, 42, 50) == sample(instance, 42, 50)
    assert sample(instance, 42, 50) != sample(instance, 43, 50)


def test_samples_are_bitstrings_over_all_qubits():
    instance = random_degree2_instance(random.Random(79), 9, 2)
    for bits in sample(instance, 5, 20):
        assert len(bits) == 9 and set(bits) <= {"0", "1"}


def test_zero_angles_sample_uniformly():
    """Chi-square of 10^5 samples of a 4-qubit instance with gamma = beta = 0."""
    terms = [_coupling(0, 1), _coupling(1, 2), _coupling(2, 3)]
    instance = _instance(4, terms, p=1, gamma=0.0, beta=0.0)
    count = 100_000
    counts = Counter(sample(instance, 42, count))
    expected = count / 16
    chi2 = sum((counts.get(format(i, "04b"), 0) - expected) ** 2 / expected for i in range(16))
    # 15 degrees of freedom: mean 15, standard deviation sqrt(30)
    assert chi2 < 15 + 3 * math.sqrt(30)


def test_sample_frequencies_match_oracle():
    instance = path_instance(4, 1, seed=11)
    distribution = post_selected_distribution(qaoa_to_circuit(instance))
    count = 100_000
    counts = Counter(sample(instance, 7, count))
    for i in range(16):
        bits = format(i, "04b")
        p = distribution.probability(bits)
        sigma = math.sqrt(count * p * (1 - p))
        assert abs(counts.get(bits, 0) - count * p) <= 4 * sigma + 1


def _random_path_instance(n: int, p: int, seed: int) -> QaoaInstance:
    rng = np.random.default_rng(seed)
    terms = tuple(Term((v, v + 1), tuple(rng.uniform(-1, 1, 4))) for v in range(n - 1))
    return QaoaInstance(
        n=n,
        p=p,
        cost=CostFunction(n, terms),
        gammas=tuple(rng.uniform(0, math.pi, p)),
        betas=tuple(rng.uniform(0, math.pi, p)),
    )


def _time_draw(instance: QaoaInstance, draws: int = 3) -> float:
    sampler = ChainRuleSampler(instance, seed=0)
    start = time.perf_counter()
    for _ in range(draws):
        sampler._branch.cache_clear()
        sampler.draw()
    return (time.perf_counter() - start) / draws


@pytest.mark.slow
def test_sampling_time_scales_polynomially_in_n():
    sizes = [100, 200, 400, 800]
    times = [_time_draw(_random_path_instance(n, 4, n)) for n in sizes]
    slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
    assert slope < 2


@pytest.mark.slow
def test_sampling_time_in_depth_is_bounded():
    times = {p: _time_draw(_random_path_instance(64, p, p)) for p in range(1, 8)}
    base = times[1] / 4
    for p, t in times.items():
        assert t <= 50 * base * 4**p


@pytest.mark.slow
def test_single_sample_of_large_instance():
    instance = _random_path_instance(200, 6, 1)
    start = time.perf_counter()
    (bits,) = sample(instance, 0, 1)
    assert time.perf_counter() - start < 60
    assert len(bits) == 200


def test_long_path_sampling_does_not_underflow():
    instance = _random_path_instance(1300, 1, 5)
    sampler = ChainRuleSampler(instance, seed=3)
    bits, _ = sampler.draw()
    assert len(bits) == 1300 and set(bits) <= {"0", "1"}
    # branch weights are conditionals of the drawn bits, not prefix probabilities
    prefix: tuple[int, ...] = ()
    for b in bits[:-1]:
        prefix += (int(b),)
        assert sampler._branch(0, prefix)[1] > 1e-6
