"""Tests for reward sources and the hard-instance constructions."""

import math

import numpy as np
import pytest

from graphbandits.environments import (
    BernoulliSource,
    CliqueAveragedSource,
    FixedSequenceSource,
    capacity_reduction,
    clique_partition_instance,
    emit_round,
    hard_instance_gap,
    lower_bound_instance,
    partition_decision_subset,
)
from graphbandits.errors import BadPartition, ExhaustedSequence
from graphbandits.feedback_graph import (
    classify_observability,
    cycle_graph,
    independence_number_exact,
    Observability,
)
from graphbandits.rng import environment_rng

from oracles import brute_force_independence_number


# ---------------------------------------------------------------------------
# reward sources


def test_bernoulli_source_basics():
    source = BernoulliSource([0.2, 0.8])
    assert source.num_arms == 2
    rng = environment_rng(0)
    draws = np.array([source.rewards(t, rng) for t in range(4000)])
    assert set(np.unique(draws)) <= {0.0, 1.0}
    assert np.all(np.abs(draws.mean(axis=0) - [0.2, 0.8]) < 0.03)


def test_bernoulli_source_rejects_bad_means():
    with pytest.raises(ValueError):
        BernoulliSource([0.5, 1.2])
    with pytest.raises(ValueError):
        BernoulliSource([-0.1])


def test_fixed_sequence_replays_and_exhausts():
    matrix = np.array([[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]])
    source = FixedSequenceSource(matrix)
    assert source.num_arms == 2
    assert source.horizon == 3
    rng = environment_rng(0)
    for t in range(3):
        assert np.array_equal(source.rewards(t, rng), matrix[t])
    with pytest.raises(ExhaustedSequence):
        source.rewards(3, rng)
    with pytest.raises(ExhaustedSequence):
        source.rewards(-1, rng)


def test_fixed_sequence_validation():
    with pytest.raises(ValueError):
        FixedSequenceSource(np.array([0.1, 0.2]))  # not 2-d
    with pytest.raises(ValueError):
        FixedSequenceSource(np.array([[0.1, 1.4]]))


def test_clique_averaged_means_mode():
    source = CliqueAveragedSource([(0, 1), (2, 3)], clique_means=[0.7, 0.2])
    assert source.num_arms == 4
    assert source.clique_size == 2
    rng = environment_rng(0)
    draws = np.array([source.rewards(t, rng) for t in range(6000)])
    # arms of one clique always agree
    assert np.array_equal(draws[:, 0], draws[:, 1])
    assert np.array_equal(draws[:, 2], draws[:, 3])
    # clique value is size * Bernoulli, so per-arm rewards are 0/1 with the
    # clique mean as frequency
    assert set(np.unique(draws)) <= {0.0, 1.0}
    assert abs(draws[:, 0].mean() - 0.7) < 0.03
    assert abs(draws[:, 2].mean() - 0.2) < 0.03


def test_clique_averaged_sequence_mode():
    seq = np.array([[2.0, 0.0], [1.0, 2.0], [0.0, 0.5]])
    source = CliqueAveragedSource([(0, 1), (2, 3)], clique_sequence=seq)
    rng = environment_rng(0)
    assert np.allclose(source.rewards(0, rng), [1.0, 1.0, 0.0, 0.0])
    assert np.allclose(source.rewards(1, rng), [0.5, 0.5, 1.0, 1.0])
    assert np.allclose(source.rewards(2, rng), [0.0, 0.0, 0.25, 0.25])
    with pytest.raises(ExhaustedSequence):
        source.rewards(3, rng)


def test_clique_averaged_validation():
    with pytest.raises(BadPartition):
        CliqueAveragedSource([(0, 1), (2,)], clique_means=[0.5, 0.5])
    with pytest.raises(BadPartition):
        CliqueAveragedSource([(0, 1), (1, 2)], clique_means=[0.5, 0.5])
    with pytest.raises(ValueError):
        CliqueAveragedSource([(0, 1), (2, 3)], clique_means=[0.5, 0.5],
                             clique_sequence=np.zeros((2, 2)))
    with pytest.raises(ValueError):
        CliqueAveragedSource([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        CliqueAveragedSource([(0, 1), (2, 3)], clique_means=[0.5, 1.5])
    with pytest.raises(ValueError):
        CliqueAveragedSource([(0, 1), (2, 3)], clique_sequence=np.full((2, 2), 3.0))


def test_emit_round_validates_range():
    class BrokenSource:
        def rewards(self, t, rng):
            return np.array([0.5, 1.5])

    with pytest.raises(ValueError):
        emit_round(BrokenSource(), 0, environment_rng(0))
    good = emit_round(BernoulliSource([0.5, 0.5]), 0, environment_rng(0))
    assert good.shape == (2,)


# ---------------------------------------------------------------------------
# hard instances


def test_hard_instance_gap_value_and_clamp():
    assert hard_instance_gap(16, 4096) == pytest.approx(1.0 / 1024.0, rel=1e-12)
    assert hard_instance_gap(4, 1, coefficient=10.0) == pytest.approx(0.25 - 1e-9)


def test_lower_bound_instance_layout():
    graph, means, gap = lower_bound_instance(12, 2, 8, 1024)
    assert gap == pytest.approx(hard_instance_gap(4, 1024))
    # independent part: blocks of 4 starting at arms 0 and 4
    assert means[0] == pytest.approx(0.25 + gap)
    assert means[4] == pytest.approx(0.25 + gap)
    inert = [1, 2, 3, 5, 6, 7]
    assert np.allclose(means[inert], 0.25)
    assert np.allclose(means[8:], 0.0)
    # padding clique is fully inter-connected and sees the whole graph
    assert 9 in graph.out_edges[8]
    assert 0 in graph.out_edges[8]
    assert 8 in graph.out_edges[0]
    # arms of the independent set do not see each other
    assert 1 not in graph.out_edges[0]


def test_lower_bound_instance_independence_and_observability():
    graph, _, _ = lower_bound_instance(12, 2, 8, 1024)
    assert independence_number_exact(graph) == 8
    assert brute_force_independence_number(graph.num_arms, graph.edge_list()) == 8
    assert classify_observability(graph) is Observability.STRONGLY_OBSERVABLE


def test_lower_bound_instance_custom_elevation():
    graph, means, gap = lower_bound_instance(10, 2, 8, 512, elevated=(3, 1))
    assert means[3] == pytest.approx(0.25 + gap)
    assert means[4 + 1] == pytest.approx(0.25 + gap)
    assert means[0] == pytest.approx(0.25)


def test_lower_bound_instance_validation():
    with pytest.raises(ValueError):
        lower_bound_instance(8, 2, 9, 100)  # alpha > K
    with pytest.raises(ValueError):
        lower_bound_instance(12, 3, 8, 100)  # S does not divide alpha
    with pytest.raises(ValueError):
        lower_bound_instance(12, 4, 8, 100)  # blocks of 2 < 4
    with pytest.raises(ValueError):
        lower_bound_instance(12, 2, 8, 100, elevated=(0,))
    with pytest.raises(ValueError):
        lower_bound_instance(12, 2, 8, 100, elevated=(0, 7))


def test_clique_partition_instance_structure():
    base = cycle_graph(4, with_self_loops=True)
    graph, blocks = clique_partition_instance(4, 3, base)
    assert graph.num_arms == 12
    assert blocks == [tuple(range(i * 3, (i + 1) * 3)) for i in range(4)]
    # within-block arms form a bidirectional clique
    assert 1 in graph.out_edges[0] and 0 in graph.out_edges[1]
    # blocks inherit the cycle edges: block 0 -> block 1
    assert 3 in graph.out_edges[0]
    # non-adjacent blocks stay unconnected: block 0 vs block 2
    assert 6 not in graph.out_edges[0]


def test_clique_partition_preserves_independence_number():
    base = cycle_graph(4, with_self_loops=True)
    graph, _ = clique_partition_instance(4, 3, base)
    assert independence_number_exact(base) == 2
    assert brute_force_independence_number(graph.num_arms, graph.edge_list()) == 2


def test_clique_partition_instance_node_count_check():
    with pytest.raises(ValueError):
        clique_partition_instance(5, 2, cycle_graph(4))


def test_partition_decision_subset():
    actions = partition_decision_subset(6, 2)
    assert len(actions) == 3
    assert np.array_equal(actions[0], [1, 1, 0, 0, 0, 0])
    assert np.array_equal(actions[2], [0, 0, 0, 0, 1, 1])
    with pytest.raises(BadPartition):
        partition_decision_subset(7, 2)


# ---------------------------------------------------------------------------
# capacity reduction


def test_capacity_reduction_layout():
    red = capacity_reduction([2, 3, 1], budget=3)
    assert red.num_copies == 6
    assert red.num_originals == 3
    assert red.independence_number == 3
    assert np.array_equal(red.copy_of, [0, 0, 1, 1, 1, 2])
    # copies of one original form a clique, disjoint originals do not touch
    assert 1 in red.graph.out_edges[0]
    assert 2 not in red.graph.out_edges[0]
    assert brute_force_independence_number(red.graph.num_arms, red.graph.edge_list()) == 3


def test_capacity_reduction_lift_and_fold():
    red = capacity_reduction([2, 3, 1], budget=3)
    lifted = red.lift(np.array([0.1, 0.5, 0.9]))
    assert np.allclose(lifted, [0.1, 0.1, 0.5, 0.5, 0.5, 0.9])
    action = np.array([1, 0, 1, 1, 0, 0], dtype=np.uint8)
    folded = red.fold(action)
    assert np.array_equal(folded, [1, 2, 0])
    assert np.all(folded <= np.array(red.capacities))
    with pytest.raises(ValueError):
        red.lift(np.zeros(4))
    with pytest.raises(ValueError):
        red.fold(np.zeros(5))


def test_capacity_reduction_validation():
    with pytest.raises(ValueError):
        capacity_reduction([2, 0], budget=1)
    with pytest.raises(ValueError):
        capacity_reduction([2, 2], budget=5)
    with pytest.raises(ValueError):
        capacity_reduction([2, 2], budget=0)
