"""Randomized rounding of fractional points into decisions.

Three samplers share the interface ``draw(x, budget, rng) -> action``:

* ``SwapRoundingSampler``: pairwise merging of the vertex decomposition.
  Matches the target marginals exactly and makes every pair of arm
  indicators non-positively correlated, which is what the variance side
  of the mirror-descent analysis needs.
* ``MeanOnlySampler``: picks one decomposition vertex by weight. Same
  marginals, but correlations can be positive.
* ``CliqueAlignedSampler``: when the point is constant on each clique of a
  partition, plays a whole clique; otherwise falls back to mean-only.
  This is the sampler that collapses the problem to one choice per clique.

``certify_sampler`` draws many actions and reports marginal z-scores and
pairwise covariances with standard errors, flagging significantly positive
pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import BadPartition, ExchangeFailure, NumericalFailure
from .polytope import FEASIBILITY_TOL, VertexDecomposition, decompose

logger = logging.getLogger(__name__)

# A point counts as clique-aligned when each clique's coordinates span no
# more than this.
ALIGNMENT_TOL = 1e-9

_MIN_CERTIFY_SAMPLES = 1000


class _CoinBuffer:
    """Uniform(0,1) draws consumed one at a time from pre-drawn blocks."""

    __slots__ = ("_rng", "_block", "_buf", "_pos")

    def __init__(self, rng: np.random.Generator, block: int = 8192) -> None:
        self._rng = rng
        self._block = block
        self._buf = rng.random(block)
        self._pos = 0

    def next(self) -> float:
        if self._pos == self._block:
            self._buf = self._rng.random(self._block)
            self._pos = 0
        value = self._buf[self._pos]
        self._pos += 1
        return value


def _vertex_masks(decomposition: VertexDecomposition) -> list[int]:
    masks = []
    for row in decomposition.vertices:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        masks.append(mask)
    return masks


def _swap_round_masks(weights: np.ndarray, masks: list[int], budget: int, coins: _CoinBuffer) -> int:
    """Merge the weighted decisions pairwise into one decision bitmask."""
    merged = masks[0]
    merged_weight = float(weights[0])
    for i in range(1, len(masks)):
        incoming = masks[i]
        incoming_weight = float(weights[i])
        while merged != incoming:
            only_merged = merged & ~incoming
            only_incoming = incoming & ~merged
            if only_merged == 0 or only_incoming == 0:
                raise ExchangeFailure("decisions of unequal size cannot be merged")
            a = 1 << ((only_merged & -only_merged).bit_length() - 1)
            b = 1 << ((only_incoming & -only_incoming).bit_length() - 1)
            total = merged_weight + incoming_weight
            keep_merged = 1.0 if total <= 0.0 else merged_weight / total
            if coins.next() < keep_merged:
                incoming = (incoming & ~b) | a
            else:
                merged = (merged & ~a) | b
        merged_weight += incoming_weight
    if merged.bit_count() != budget:
        raise NumericalFailure(
            f"swap rounding produced {merged.bit_count()} arms instead of {budget}"
        )
    return merged


def _mask_to_action(mask: int, num_arms: int) -> np.ndarray:
    action = np.zeros(num_arms, dtype=np.uint8)
    while mask:
        low = mask & -mask
        action[low.bit_length() - 1] = 1
        mask ^= low
    return action


def _validate_decomposition(decomposition: VertexDecomposition) -> int:
    sizes = decomposition.vertices.sum(axis=1)
    if decomposition.num_terms == 0:
        raise ExchangeFailure("empty decomposition")
    if np.any(sizes != sizes[0]):
        raise ExchangeFailure(f"vertex sizes differ: {np.unique(sizes).tolist()}")
    if abs(float(decomposition.weights.sum()) - 1.0) > FEASIBILITY_TOL:
        raise ExchangeFailure(f"weights sum to {float(decomposition.weights.sum())}, not 1")
    if np.any(decomposition.weights < -FEASIBILITY_TOL):
        raise ExchangeFailure("negative decomposition weight")
    return int(sizes[0])


def swap_round(decomposition: VertexDecomposition, rng: np.random.Generator) -> np.ndarray:
    """One draw of negatively correlated rounding; returns a binary action."""
    budget = _validate_decomposition(decomposition)
    masks = _vertex_masks(decomposition)
    mask = _swap_round_masks(decomposition.weights, masks, budget, _CoinBuffer(rng, block=64))
    return _mask_to_action(mask, decomposition.vertices.shape[1])


def mean_only_sample(decomposition: VertexDecomposition, rng: np.random.Generator) -> np.ndarray:
    """Pick one vertex with probability proportional to its weight."""
    _validate_decomposition(decomposition)
    cumulative = np.cumsum(decomposition.weights)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    index = min(index, decomposition.num_terms - 1)
    return decomposition.vertices[index].copy()


def _validate_cliques(cliques, num_arms: int, budget: int) -> list[np.ndarray]:
    arrays = [np.asarray(sorted(int(a) for a in clique), dtype=np.int64) for clique in cliques]
    seen: set[int] = set()
    for block in arrays:
        if block.shape[0] != budget:
            raise BadPartition(f"clique size {block.shape[0]} != budget {budget}")
        for a in block.tolist():
            if not 0 <= a < num_arms or a in seen:
                raise BadPartition(f"arm {a} repeated or out of range")
            seen.add(a)
    if len(seen) != num_arms:
        raise BadPartition(f"cliques cover {len(seen)} of {num_arms} arms")
    return arrays


def clique_aligned_sample(
    x: np.ndarray,
    cliques,
    budget: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, bool]:
    """Play a whole clique when x is constant on every clique.

    Returns ``(action, aligned)``. In the aligned branch clique i is chosen
    with probability equal to its common coordinate value (these sum to 1
    because the budget splits evenly across cliques). Off the aligned set
    the draw falls back to mean-only sampling of the decomposition, which
    is logged: the clique reduction no longer applies there.
    """
    x = np.asarray(x, dtype=np.float64)
    blocks = _validate_cliques(cliques, x.shape[0], budget)
    common = np.array([float(x[b].mean()) for b in blocks])
    spread = max(float(np.ptp(x[b])) for b in blocks)
    if spread <= ALIGNMENT_TOL:
        cumulative = np.cumsum(common)
        index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        index = min(index, len(blocks) - 1)
        action = np.zeros(x.shape[0], dtype=np.uint8)
        action[blocks[index]] = 1
        return action, True
    logger.warning("clique-aligned sampler fell back to mean-only (spread %.3g)", spread)
    return mean_only_sample(decompose(x, budget), rng), False


# ---------------------------------------------------------------------------
# sampler objects used by policies


class SwapRoundingSampler:
    name = "swap"

    def __init__(self) -> None:
        self.last_decomposition: VertexDecomposition | None = None

    def draw(self, x: np.ndarray, budget: int, rng: np.random.Generator) -> np.ndarray:
        self.last_decomposition = decompose(x, budget)
        return swap_round(self.last_decomposition, rng)

    def draw_many(self, x: np.ndarray, budget: int, n: int, rng: np.random.Generator) -> np.ndarray:
        decomposition = decompose(x, budget)
        _validate_decomposition(decomposition)
        masks = _vertex_masks(decomposition)
        coins = _CoinBuffer(rng)
        num_arms = x.shape[0]
        out = np.zeros((n, num_arms), dtype=np.uint8)
        weights = decomposition.weights
        for row in range(n):
            mask = _swap_round_masks(weights, masks, budget, coins)
            while mask:
                low = mask & -mask
                out[row, low.bit_length() - 1] = 1
                mask ^= low
        return out


class MeanOnlySampler:
    name = "mean-only"

    def __init__(self) -> None:
        self.last_decomposition: VertexDecomposition | None = None

    def draw(self, x: np.ndarray, budget: int, rng: np.random.Generator) -> np.ndarray:
        self.last_decomposition = decompose(x, budget)
        return mean_only_sample(self.last_decomposition, rng)

    def draw_many(self, x: np.ndarray, budget: int, n: int, rng: np.random.Generator) -> np.ndarray:
        decomposition = decompose(x, budget)
        _validate_decomposition(decomposition)
        cumulative = np.cumsum(decomposition.weights)
        indices = np.searchsorted(cumulative, rng.random(n) * cumulative[-1], side="right")
        indices = np.minimum(indices, decomposition.num_terms - 1)
        return decomposition.vertices[indices]


class CliqueAlignedSampler:
    """Clique sampler with a fallback counter for alignment diagnostics."""

    name = "clique-aligned"

    def __init__(self, cliques) -> None:
        self.cliques = tuple(tuple(int(a) for a in c) for c in cliques)
        self.fallback_count = 0
        self.last_decomposition: VertexDecomposition | None = None

    def draw(self, x: np.ndarray, budget: int, rng: np.random.Generator) -> np.ndarray:
        action, aligned = clique_aligned_sample(x, self.cliques, budget, rng)
        self.last_decomposition = None
        if not aligned:
            self.fallback_count += 1
        return action

    def draw_many(self, x: np.ndarray, budget: int, n: int, rng: np.random.Generator) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        blocks = _validate_cliques(self.cliques, x.shape[0], budget)
        spread = max(float(np.ptp(x[b])) for b in blocks)
        if spread <= ALIGNMENT_TOL:
            common = np.array([float(x[b].mean()) for b in blocks])
            cumulative = np.cumsum(common)
            indices = np.searchsorted(cumulative, rng.random(n) * cumulative[-1], side="right")
            indices = np.minimum(indices, len(blocks) - 1)
            rows = np.zeros((len(blocks), x.shape[0]), dtype=np.uint8)
            for i, b in enumerate(blocks):
                rows[i, b] = 1
            return rows[indices]
        self.fallback_count += n
        logger.warning("clique-aligned sampler fell back to mean-only (spread %.3g)", spread)
        return MeanOnlySampler().draw_many(x, budget, n, rng)


SAMPLER_NAMES = ("swap", "mean-only", "clique-aligned")


def make_sampler(name: str, cliques=None):
    if name == "swap":
        return SwapRoundingSampler()
    if name == "mean-only":
        return MeanOnlySampler()
    if name == "clique-aligned":
        if cliques is None:
            raise ValueError("clique-aligned sampler needs a clique partition")
        return CliqueAlignedSampler(cliques)
    raise ValueError(f"unknown sampler {name!r}; known: {SAMPLER_NAMES}")


# ---------------------------------------------------------------------------
# statistical certification


@dataclass(frozen=True)
class SamplerReport:
    """Monte Carlo evidence about a sampler's marginals and correlations.

    Mean z-scores compare empirical marginals against the target point
    using binomial standard errors. Pair (i, j) is flagged when its
    empirical covariance exceeds +4 standard errors; for swap rounding any
    flagged pair is a failure.
    """

    sampler: str
    n_samples: int
    target: np.ndarray
    empirical_mean: np.ndarray
    mean_z: np.ndarray
    worst_mean_z: float
    covariance: np.ndarray
    covariance_se: np.ndarray
    max_positive_cov_z: float
    flagged_pairs: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "sampler": self.sampler,
            "n_samples": self.n_samples,
            "target": self.target.tolist(),
            "empirical_mean": self.empirical_mean.tolist(),
            "worst_mean_z": self.worst_mean_z,
            "max_positive_cov_z": self.max_positive_cov_z,
            "flagged_pairs": [list(p) for p in self.flagged_pairs],
        }


def certify_sampler(
    sampler,
    x: np.ndarray,
    budget: int,
    n_samples: int,
    rng: np.random.Generator,
    z_threshold: float = 4.0,
) -> SamplerReport:
    """Draw ``n_samples`` actions and compare against the target point."""
    if n_samples < _MIN_CERTIFY_SAMPLES:
        raise ValueError(f"need at least {_MIN_CERTIFY_SAMPLES} samples, got {n_samples}")
    x = np.asarray(x, dtype=np.float64)
    draws = sampler.draw_many(x, budget, n_samples, rng)
    if np.any(draws.sum(axis=1) != budget):
        raise NumericalFailure("sampler produced an action outside the decision set")

    draws_f = draws.astype(np.float64)
    mean = draws_f.mean(axis=0)
    mean_se = np.sqrt(x * (1.0 - x) / n_samples)
    deviation = mean - x
    with np.errstate(divide="ignore", invalid="ignore"):
        mean_z = np.where(
            mean_se > 0.0,
            deviation / np.where(mean_se > 0.0, mean_se, 1.0),
            np.where(np.abs(deviation) > 0.0, np.inf, 0.0),
        )
    second_moment = (draws_f.T @ draws_f) / n_samples
    covariance = second_moment - np.outer(mean, mean)

    # Var of c_t = (v_i - mean_i)(v_j - mean_j), using v^2 = v for binaries.
    a = mean[:, None]
    b = mean[None, :]
    second_c = (
        (1.0 - 2.0 * a) * (1.0 - 2.0 * b) * second_moment
        + (1.0 - 2.0 * a) * b * b * a
        + (1.0 - 2.0 * b) * a * a * b
        + a * a * b * b
    )
    var_c = np.maximum(second_c - covariance**2, 0.0)
    covariance_se = np.sqrt(var_c / n_samples)

    k = x.shape[0]
    upper = np.triu_indices(k, k=1)
    cov_u = covariance[upper]
    se_u = covariance_se[upper]
    with np.errstate(divide="ignore", invalid="ignore"):
        z_u = np.where(
            se_u > 0.0,
            cov_u / np.where(se_u > 0.0, se_u, 1.0),
            np.where(cov_u > 0.0, np.inf, 0.0),
        )
    flagged = [
        (int(upper[0][idx]), int(upper[1][idx]))
        for idx in np.flatnonzero(z_u > z_threshold)
    ]
    max_positive = float(np.max(z_u)) if z_u.size else 0.0

    return SamplerReport(
        sampler=getattr(sampler, "name", type(sampler).__name__),
        n_samples=n_samples,
        target=x,
        empirical_mean=mean,
        mean_z=np.asarray(mean_z, dtype=np.float64),
        worst_mean_z=float(np.max(np.abs(mean_z))),
        covariance=covariance,
        covariance_se=covariance_se,
        max_positive_cov_z=max_positive,
        flagged_pairs=tuple(flagged),
    )
