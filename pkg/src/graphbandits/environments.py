"""Reward processes and hard-instance constructions.

Reward sources expose ``rewards(t, rng) -> array`` for 0-based rounds;
stochastic sources draw fresh values from the run's environment stream,
fixed sequences replay a matrix and refuse reads past their horizon.

The instance builders reproduce the structures used in the lower-bound
and separation arguments: an independent set padded with a maximally
informative zero-reward clique, clique blow-ups of a smaller graph whose
independence number carries over, equal-block partition decision sets,
and the copy-arm reduction that turns per-arm capacities into cliques of
interchangeable copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadPartition, ExhaustedSequence
from .feedback_graph import FeedbackGraph

# The elevated mean sits this far above the 1/4 baseline by default; the
# gap is clamped below to stay inside (0, 1/4).
_GAP_COEFFICIENT = 1.0 / 64.0
_MAX_GAP = 0.25 - 1e-9


# ---------------------------------------------------------------------------
# reward sources


class BernoulliSource:
    """Independent Bernoulli rewards with fixed per-arm means."""

    kind = "bernoulli"

    def __init__(self, means) -> None:
        self.means = np.asarray(means, dtype=np.float64)
        if np.min(self.means) < 0.0 or np.max(self.means) > 1.0:
            raise ValueError("Bernoulli means must lie in [0, 1]")

    @property
    def num_arms(self) -> int:
        return self.means.shape[0]

    def rewards(self, t: int, rng: np.random.Generator) -> np.ndarray:
        return (rng.random(self.means.shape[0]) < self.means).astype(np.float64)


class FixedSequenceSource:
    """Replays a (horizon x num_arms) reward matrix."""

    kind = "sequence"

    def __init__(self, matrix) -> None:
        self.matrix = np.asarray(matrix, dtype=np.float64)
        if self.matrix.ndim != 2:
            raise ValueError("reward sequence must be a 2-d array")
        if np.min(self.matrix) < 0.0 or np.max(self.matrix) > 1.0:
            raise ValueError("rewards must lie in [0, 1]")

    @property
    def num_arms(self) -> int:
        return self.matrix.shape[1]

    @property
    def horizon(self) -> int:
        return self.matrix.shape[0]

    def rewards(self, t: int, rng: np.random.Generator) -> np.ndarray:
        if not 0 <= t < self.matrix.shape[0]:
            raise ExhaustedSequence(f"round {t} outside the {self.matrix.shape[0]}-round sequence")
        return self.matrix[t]


class CliqueAveragedSource:
    """Clique-level values shared equally by every arm of the clique.

    Either draws clique values as budget * Bernoulli(clique mean) each
    round, or replays a fixed (horizon x num_cliques) matrix of values in
    [0, budget]. Arm rewards are the clique value divided by the clique
    size, so all arms of a clique always agree.
    """

    kind = "clique_averaged"

    def __init__(self, cliques, clique_means=None, clique_sequence=None) -> None:
        self.cliques = [np.asarray(sorted(int(a) for a in c), dtype=np.int64) for c in cliques]
        sizes = {int(c.shape[0]) for c in self.cliques}
        if len(sizes) != 1:
            raise BadPartition(f"cliques must share one size, got {sorted(sizes)}")
        self.clique_size = sizes.pop()
        arms = sorted(int(a) for c in self.cliques for a in c)
        if arms != list(range(len(arms))):
            raise BadPartition("cliques must partition the arms")
        self._num_arms = len(arms)
        self.block_of = np.empty(self._num_arms, dtype=np.int64)
        for i, c in enumerate(self.cliques):
            self.block_of[c] = i
        if (clique_means is None) == (clique_sequence is None):
            raise ValueError("give exactly one of clique_means or clique_sequence")
        if clique_means is not None:
            self.clique_means = np.asarray(clique_means, dtype=np.float64)
            if self.clique_means.shape[0] != len(self.cliques):
                raise ValueError("one mean per clique required")
            if np.min(self.clique_means) < 0.0 or np.max(self.clique_means) > 1.0:
                raise ValueError("clique means must lie in [0, 1]")
            self.clique_sequence = None
        else:
            self.clique_means = None
            self.clique_sequence = np.asarray(clique_sequence, dtype=np.float64)
            if self.clique_sequence.ndim != 2 or self.clique_sequence.shape[1] != len(self.cliques):
                raise ValueError("clique sequence must be (horizon x num_cliques)")
            if np.min(self.clique_sequence) < 0.0 or np.max(self.clique_sequence) > self.clique_size:
                raise ValueError(f"clique values must lie in [0, {self.clique_size}]")

    @property
    def num_arms(self) -> int:
        return self._num_arms

    def clique_values(self, t: int, rng: np.random.Generator) -> np.ndarray:
        if self.clique_means is not None:
            draws = (rng.random(len(self.cliques)) < self.clique_means).astype(np.float64)
            return self.clique_size * draws
        if not 0 <= t < self.clique_sequence.shape[0]:
            raise ExhaustedSequence(
                f"round {t} outside the {self.clique_sequence.shape[0]}-round sequence"
            )
        return self.clique_sequence[t]

    def rewards(self, t: int, rng: np.random.Generator) -> np.ndarray:
        return (self.clique_values(t, rng) / self.clique_size)[self.block_of]


def emit_round(source, t: int, rng: np.random.Generator) -> np.ndarray:
    """One round of rewards from any source, validated into [0, 1]."""
    values = np.asarray(source.rewards(t, rng), dtype=np.float64)
    if np.min(values) < 0.0 or np.max(values) > 1.0:
        raise ValueError(f"round {t} rewards escape [0, 1]")
    return values


# ---------------------------------------------------------------------------
# hard instances


def hard_instance_gap(block_size: int, horizon: int, coefficient: float = _GAP_COEFFICIENT) -> float:
    """The elevated-arm advantage: coefficient * sqrt(block_size / horizon),
    clamped into (0, 1/4). ``block_size`` is alpha / budget, the number of
    arms competing within one block."""
    gap = coefficient * math.sqrt(block_size / horizon)
    return min(gap, _MAX_GAP)


def lower_bound_instance(
    num_arms: int,
    budget: int,
    independence_number: int,
    horizon: int,
    elevated=None,
):
    """The stochastic family behind the regret lower bound.

    The first ``independence_number`` arms form an independent set I with
    self-loops, split into ``budget`` consecutive blocks of n = alpha / S
    arms; arm ``elevated[m]`` of block m earns mean 1/4 + gap, the rest of
    I earns 1/4. Remaining arms are a bidirectional clique, fully
    connected with I in both directions, and earn 0: maximally informative
    but worthless, which keeps the independence number at alpha exactly.

    Requires budget | alpha and alpha / budget >= 4. Returns
    ``(graph, means, gap)``.
    """
    alpha, s = int(independence_number), int(budget)
    if alpha > num_arms:
        raise ValueError(f"independence number {alpha} exceeds {num_arms} arms")
    if alpha % s != 0:
        raise ValueError(f"budget {s} must divide the independence number {alpha}")
    block_size = alpha // s
    if block_size < 4:
        raise ValueError(f"need at least 4 arms per block, got {block_size}")
    if elevated is None:
        elevated = (0,) * s
    elevated = tuple(int(u) for u in elevated)
    if len(elevated) != s or any(not 0 <= u < block_size for u in elevated):
        raise ValueError(f"elevated must be {s} indices in [0, {block_size})")

    edges = [(i, i) for i in range(num_arms)]
    clique = range(alpha, num_arms)
    edges.extend((i, j) for i in clique for j in clique if i != j)
    edges.extend((i, j) for i in clique for j in range(alpha))
    edges.extend((j, i) for i in clique for j in range(alpha))
    graph = FeedbackGraph(num_arms, edges)

    gap = hard_instance_gap(block_size, horizon)
    means = np.zeros(num_arms, dtype=np.float64)
    means[:alpha] = 0.25
    for m, u in enumerate(elevated):
        means[m * block_size + u] = 0.25 + gap
    return graph, means, gap


def clique_partition_instance(num_cliques: int, budget: int, clique_graph: FeedbackGraph):
    """Blow each node of ``clique_graph`` up into a clique of ``budget``
    arms; arms inherit the edges of their blocks. The symmetrized
    independence number of the result equals that of ``clique_graph``.

    Returns ``(graph, cliques)`` with cliques as consecutive arm blocks.
    """
    if clique_graph.num_arms != num_cliques:
        raise ValueError(
            f"clique graph has {clique_graph.num_arms} nodes, expected {num_cliques}"
        )
    s = int(budget)
    num_arms = num_cliques * s
    blocks = [tuple(range(i * s, (i + 1) * s)) for i in range(num_cliques)]
    edges = []
    for i in range(num_cliques):
        edges.extend((a, b) for a in blocks[i] for b in blocks[i])
        for j in clique_graph.out_edges[i]:
            if j != i:
                edges.extend((a, b) for a in blocks[i] for b in blocks[j])
    return FeedbackGraph(num_arms, edges), blocks


def partition_decision_subset(num_arms: int, budget: int) -> list[np.ndarray]:
    """The K/S disjoint consecutive decisions; requires budget | num_arms."""
    if num_arms % budget != 0:
        raise BadPartition(f"budget {budget} must divide {num_arms}")
    actions = []
    for start in range(0, num_arms, budget):
        action = np.zeros(num_arms, dtype=np.uint8)
        action[start : start + budget] = 1
        actions.append(action)
    return actions


@dataclass(frozen=True)
class CapacityReduction:
    """Copy-arm encoding of per-arm capacities.

    Original arm a becomes ``capacities[a]`` interchangeable copies that
    form a bidirectional clique (playing any copy reveals all of them,
    and all copies share the original arm's reward). The copy graph has
    one clique per original arm, so its independence number equals the
    number of original arms.
    """

    capacities: tuple[int, ...]
    budget: int
    graph: FeedbackGraph
    copy_of: np.ndarray

    @property
    def num_copies(self) -> int:
        return int(self.copy_of.shape[0])

    @property
    def num_originals(self) -> int:
        return len(self.capacities)

    @property
    def independence_number(self) -> int:
        return self.num_originals

    def lift(self, rewards: np.ndarray) -> np.ndarray:
        """Original-arm rewards -> identical rewards on every copy."""
        rewards = np.asarray(rewards, dtype=np.float64)
        if rewards.shape != (self.num_originals,):
            raise ValueError(f"expected {self.num_originals} rewards")
        return rewards[self.copy_of]

    def fold(self, action: np.ndarray) -> np.ndarray:
        """Copy-level action -> per-original multiplicities (<= capacity)."""
        action = np.asarray(action)
        if action.shape != (self.num_copies,):
            raise ValueError(f"expected a {self.num_copies}-copy action")
        return np.bincount(self.copy_of, weights=action, minlength=self.num_originals).astype(np.int64)


def capacity_reduction(capacities, budget: int) -> CapacityReduction:
    """Build the copy-arm instance for integer capacities >= 1."""
    caps = tuple(int(c) for c in capacities)
    if any(c < 1 for c in caps):
        raise ValueError(f"capacities must be >= 1, got {caps}")
    total = sum(caps)
    if not 1 <= budget <= total:
        raise ValueError(f"budget {budget} outside [1, {total}]")
    copy_of = np.repeat(np.arange(len(caps), dtype=np.int64), caps)
    edges = []
    start = 0
    for c in caps:
        block = range(start, start + c)
        edges.extend((i, j) for i in block for j in block)
        start += c
    return CapacityReduction(
        capacities=caps,
        budget=int(budget),
        graph=FeedbackGraph(total, edges),
        copy_of=copy_of,
    )
