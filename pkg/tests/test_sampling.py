"""Tests for randomized rounding: marginals, correlation sign, clique play."""

import logging

import numpy as np
import pytest

from graphbandits.errors import BadPartition, ExchangeFailure, NumericalFailure
from graphbandits.polytope import VertexDecomposition, decompose
from graphbandits.rng import derived_rng
from graphbandits.sampling import (
    CliqueAlignedSampler,
    MeanOnlySampler,
    SamplerReport,
    SwapRoundingSampler,
    certify_sampler,
    clique_aligned_sample,
    make_sampler,
    mean_only_sample,
    swap_round,
)


def two_block_decomposition():
    # Half the mass on {0,1}, half on {2,3}. The classic positive-correlation
    # witness: a one-vertex-at-a-time sampler makes arms 0 and 1 co-occur
    # always or never.
    weights = np.array([0.5, 0.5])
    vertices = np.array([[1, 1, 0, 0], [0, 0, 1, 1]], dtype=np.uint8)
    return VertexDecomposition(weights=weights, vertices=vertices)


def random_point(rng, k, budget):
    x = rng.random(k)
    x = np.clip(x * (budget / x.sum()), 1e-6, 1.0)
    # absorb any clipping error into coordinates with room
    deficit = budget - x.sum()
    for _ in range(100):
        if abs(deficit) < 1e-12:
            break
        room = (1.0 - x) if deficit > 0 else (x - 1e-6)
        share = room / room.sum() * deficit
        x = np.clip(x + share, 1e-6, 1.0)
        deficit = budget - x.sum()
    return x


# ---------------------------------------------------------------------------
# swap rounding


def test_swap_round_returns_valid_action():
    rng = derived_rng(0, 1)
    x = np.array([0.9, 0.6, 0.3, 0.2])
    d = decompose(x, 2)
    for _ in range(50):
        action = swap_round(d, rng)
        assert action.sum() == 2
        assert set(np.unique(action)) <= {0, 1}


def test_swap_round_marginals_match_target():
    rng = derived_rng(0, 2)
    x = np.array([0.8, 0.7, 0.3, 0.15, 0.05])
    n = 40000
    draws = SwapRoundingSampler().draw_many(x, 2, n, rng)
    mean = draws.mean(axis=0)
    se = np.sqrt(x * (1 - x) / n)
    assert np.all(np.abs(mean - x) <= 4.5 * se)


def test_swap_round_pairwise_covariance_nonpositive():
    rng = derived_rng(0, 3)
    x = np.array([0.7, 0.55, 0.45, 0.3])
    n = 60000
    draws = SwapRoundingSampler().draw_many(x, 2, n, rng).astype(float)
    mean = draws.mean(axis=0)
    cov = draws.T @ draws / n - np.outer(mean, mean)
    # binomial-ish SE bound for each covariance entry
    se = 1.0 / np.sqrt(n)
    iu = np.triu_indices(4, k=1)
    assert np.all(cov[iu] <= 4.5 * se)


def test_swap_round_two_block_point_is_negatively_correlated_across_blocks():
    rng = derived_rng(0, 4)
    d = two_block_decomposition()
    n = 20000
    draws = np.array([swap_round(d, rng) for _ in range(n)], dtype=float)
    mean = draws.mean(axis=0)
    cov = draws.T @ draws / n - np.outer(mean, mean)
    # Each draw has exactly one arm from {0,1} and one from {2,3} or both
    # from one block; across blocks correlation cannot be positive.
    assert cov[0, 2] <= 4.0 / np.sqrt(n)
    assert cov[0, 1] <= 4.0 / np.sqrt(n)


def test_swap_round_rejects_mixed_vertex_sizes():
    weights = np.array([0.5, 0.5])
    vertices = np.array([[1, 1, 0], [1, 0, 0]], dtype=np.uint8)
    with pytest.raises(ExchangeFailure):
        swap_round(VertexDecomposition(weights=weights, vertices=vertices), derived_rng(0, 5))


def test_swap_round_rejects_bad_weight_sum():
    weights = np.array([0.5, 0.4])
    vertices = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    with pytest.raises(ExchangeFailure):
        swap_round(VertexDecomposition(weights=weights, vertices=vertices), derived_rng(0, 6))


def test_swap_round_empty_decomposition_rejected():
    weights = np.zeros(0)
    vertices = np.zeros((0, 3), dtype=np.uint8)
    with pytest.raises(ExchangeFailure):
        swap_round(VertexDecomposition(weights=weights, vertices=vertices), derived_rng(0, 7))


def test_swap_round_single_vertex_is_deterministic():
    weights = np.array([1.0])
    vertices = np.array([[0, 1, 1, 0]], dtype=np.uint8)
    d = VertexDecomposition(weights=weights, vertices=vertices)
    action = swap_round(d, derived_rng(0, 8))
    assert np.array_equal(action, vertices[0])


def test_swap_draw_matches_draw_many_distribution():
    x = np.array([0.75, 0.5, 0.5, 0.25])
    n = 12000
    sampler = SwapRoundingSampler()
    singles = np.array([sampler.draw(x, 2, derived_rng(0, 9, i)) for i in range(n)])
    rng = derived_rng(0, 10)
    batch = sampler.draw_many(x, 2, n, rng)
    se = np.sqrt(x * (1 - x) / n)
    assert np.all(np.abs(singles.mean(axis=0) - x) <= 4.5 * se)
    assert np.all(np.abs(batch.mean(axis=0) - x) <= 4.5 * se)


def test_swap_round_determinism_same_stream():
    x = np.array([0.9, 0.7, 0.25, 0.15])
    a = SwapRoundingSampler().draw_many(x, 2, 200, derived_rng(7, 0))
    b = SwapRoundingSampler().draw_many(x, 2, 200, derived_rng(7, 0))
    assert np.array_equal(a, b)


# ---------------------------------------------------------------------------
# mean-only sampling


def test_mean_only_marginals_match_but_correlation_positive():
    rng = derived_rng(0, 11)
    d = two_block_decomposition()
    n = 30000
    draws = np.array([mean_only_sample(d, rng) for _ in range(n)], dtype=float)
    mean = draws.mean(axis=0)
    assert np.all(np.abs(mean - 0.5) <= 4.5 * np.sqrt(0.25 / n))
    cov01 = (draws[:, 0] * draws[:, 1]).mean() - mean[0] * mean[1]
    # arms in the same block always co-occur: covariance near +0.25
    assert cov01 > 0.2


def test_mean_only_picks_each_vertex_with_its_weight():
    rng = derived_rng(0, 12)
    weights = np.array([0.2, 0.3, 0.5])
    vertices = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=np.uint8)
    d = VertexDecomposition(weights=weights, vertices=vertices)
    n = 30000
    draws = np.array([mean_only_sample(d, rng) for _ in range(n)], dtype=float)
    mean = draws.mean(axis=0)
    se = np.sqrt(weights * (1 - weights) / n)
    assert np.all(np.abs(mean - weights) <= 4.5 * se)


def test_mean_only_sampler_draw_many_rows_are_vertices():
    x = np.array([0.6, 0.4, 0.6, 0.4])
    sampler = MeanOnlySampler()
    draws = sampler.draw_many(x, 2, 500, derived_rng(0, 13))
    assert draws.shape == (500, 4)
    assert np.all(draws.sum(axis=1) == 2)


# ---------------------------------------------------------------------------
# clique-aligned sampling


def test_clique_aligned_plays_whole_cliques():
    cliques = [(0, 1), (2, 3), (4, 5)]
    x = np.array([0.5, 0.5, 0.3, 0.3, 0.2, 0.2])
    rng = derived_rng(0, 14)
    for _ in range(100):
        action, aligned = clique_aligned_sample(x, cliques, 2, rng)
        assert aligned
        played = tuple(np.flatnonzero(action))
        assert played in {(0, 1), (2, 3), (4, 5)}


def test_clique_aligned_clique_probabilities_equal_common_value():
    cliques = [(0, 1), (2, 3), (4, 5)]
    x = np.array([0.5, 0.5, 0.3, 0.3, 0.2, 0.2])
    n = 30000
    draws = CliqueAlignedSampler(cliques).draw_many(x, 2, n, derived_rng(0, 15))
    probs = np.array([draws[:, c[0]].mean() for c in cliques])
    target = np.array([0.5, 0.3, 0.2])
    se = np.sqrt(target * (1 - target) / n)
    assert np.all(np.abs(probs - target) <= 4.5 * se)


def test_clique_aligned_fallback_when_not_constant_on_cliques(caplog):
    cliques = [(0, 1), (2, 3)]
    x = np.array([0.9, 0.1, 0.5, 0.5])
    with caplog.at_level(logging.WARNING, logger="graphbandits.sampling"):
        action, aligned = clique_aligned_sample(x, cliques, 2, derived_rng(0, 16))
    assert not aligned
    assert action.sum() == 2
    assert any("fell back" in rec.message for rec in caplog.records)


def test_clique_aligned_sampler_counts_fallbacks():
    cliques = [(0, 1), (2, 3)]
    sampler = CliqueAlignedSampler(cliques)
    aligned_x = np.array([0.5, 0.5, 0.5, 0.5])
    sampler.draw(aligned_x, 2, derived_rng(0, 17))
    assert sampler.fallback_count == 0
    skewed_x = np.array([0.9, 0.1, 0.5, 0.5])
    sampler.draw(skewed_x, 2, derived_rng(0, 18))
    assert sampler.fallback_count == 1
    sampler.draw_many(skewed_x, 2, 10, derived_rng(0, 19))
    assert sampler.fallback_count == 11


def test_clique_partition_validation():
    x = np.array([0.5, 0.5, 0.5, 0.5])
    rng = derived_rng(0, 20)
    with pytest.raises(BadPartition):
        clique_aligned_sample(x, [(0, 1, 2), (3,)], 2, rng)  # wrong sizes
    with pytest.raises(BadPartition):
        clique_aligned_sample(x, [(0, 1), (1, 2)], 2, rng)  # arm repeated
    with pytest.raises(BadPartition):
        clique_aligned_sample(x, [(0, 1), (2, 7)], 2, rng)  # out of range
    with pytest.raises(BadPartition):
        clique_aligned_sample(x, [(0, 1)], 2, rng)  # arms uncovered


def test_make_sampler_dispatch():
    assert isinstance(make_sampler("swap"), SwapRoundingSampler)
    assert isinstance(make_sampler("mean-only"), MeanOnlySampler)
    aligned = make_sampler("clique-aligned", cliques=[(0, 1), (2, 3)])
    assert isinstance(aligned, CliqueAlignedSampler)
    with pytest.raises(ValueError):
        make_sampler("clique-aligned")
    with pytest.raises(ValueError):
        make_sampler("bogus")


# ---------------------------------------------------------------------------
# certification


def test_certify_swap_sampler_clean_report():
    rng = derived_rng(0, 21)
    x = random_point(derived_rng(0, 22), 6, 3)
    report = certify_sampler(SwapRoundingSampler(), x, 3, 20000, rng)
    assert isinstance(report, SamplerReport)
    assert report.sampler == "swap"
    assert report.n_samples == 20000
    assert report.worst_mean_z <= 4.0
    assert report.flagged_pairs == ()
    assert report.covariance.shape == (6, 6)
    d = report.to_dict()
    assert d["sampler"] == "swap"
    assert len(d["empirical_mean"]) == 6


def test_certify_flags_mean_only_positive_correlation():
    rng = derived_rng(0, 23)
    x = np.array([0.5, 0.5, 0.5, 0.5])
    report = certify_sampler(MeanOnlySampler(), x, 2, 20000, rng)
    # decomposition of the uniform point is the two-block mixture, so the
    # within-block pairs carry covariance +0.25: far above any threshold
    assert report.max_positive_cov_z > 4.0
    assert len(report.flagged_pairs) >= 1


def test_certify_rejects_small_sample_counts():
    with pytest.raises(ValueError):
        certify_sampler(SwapRoundingSampler(), np.array([0.5, 0.5]), 1, 10, derived_rng(0, 24))


def test_certify_rejects_off_polytope_actions():
    class BrokenSampler:
        name = "broken"

        def draw_many(self, x, budget, n, rng):
            out = np.zeros((n, x.shape[0]), dtype=np.uint8)
            out[:, 0] = 1  # always one arm regardless of budget
            return out

    with pytest.raises(NumericalFailure):
        certify_sampler(BrokenSampler(), np.array([0.5, 0.5, 0.5, 0.5]), 2, 2000, derived_rng(0, 25))


def test_certify_budget_one_distribution_case():
    # budget 1 turns rounding into plain categorical sampling
    rng = derived_rng(0, 26)
    x = np.array([0.6, 0.25, 0.15])
    report = certify_sampler(SwapRoundingSampler(), x, 1, 20000, rng)
    assert report.worst_mean_z <= 4.0
    assert report.flagged_pairs == ()
