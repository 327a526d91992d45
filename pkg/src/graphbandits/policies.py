"""Learning policies for budgeted arm selection under graph feedback.

All policies speak the same protocol: ``select(rng) -> action`` proposes a
binary decision vector, ``update(action, feedback)`` consumes the revealed
rewards through an access-guarded view. The experiment loop treats them
interchangeably.

* ``OsmdgPolicy``: online stochastic mirror descent in negative-entropy
  geometry with importance-weighted reward estimates built from the
  feedback graph, randomized by a pluggable sampler.
* ``EliminationPolicy``: confidence-radius elimination over an explicit
  decision list, sampling the most informative arm of the least-observed
  decisions.
* ``EtcPolicy``: explore a greedy dominating set, then commit; the tool
  for weakly observable graphs.
* ``UniformRandomPolicy``: the no-learning baseline.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    BudgetExceeded,
    DegenerateTuning,
    DenominatorZero,
    EmptyActive,
    NotObservable,
)
from .feedback import FeedbackView
from .feedback_graph import (
    FeedbackGraph,
    Observability,
    classify_observability,
    greedy_dominating_set,
    out_neighborhood,
)
from .polytope import PolytopeSpec, decompose, dual_step, initial_point, kl_project
from .sampling import SwapRoundingSampler


# ---------------------------------------------------------------------------
# reward estimation


def estimate_losses(
    graph: FeedbackGraph,
    action: np.ndarray,
    x: np.ndarray,
    observed_arms: np.ndarray,
    observed_values: np.ndarray,
) -> np.ndarray:
    """Importance-weighted complement ("loss") estimates.

    For each arm a the estimate is

        (number of selected in-neighbors of a) * (1 - reward_a)
        -----------------------------------------------------
        (sum of x over the in-neighbors of a)

    and zero when no selected arm observes a. Its expectation under any
    sampler with the correct marginals is exactly 1 - reward_a.
    """
    adj = graph.adjacency.astype(np.float64)
    return _raw_loss_estimates(adj, np.asarray(action, dtype=np.float64), x,
                               _full_rewards(graph.num_arms, observed_arms, observed_values))


def _full_rewards(num_arms: int, observed_arms: np.ndarray, observed_values: np.ndarray) -> np.ndarray:
    full = np.zeros(num_arms, dtype=np.float64)
    full[np.asarray(observed_arms, dtype=np.int64)] = observed_values
    return full


def _raw_loss_estimates(
    adj_f: np.ndarray,
    action_f: np.ndarray,
    x: np.ndarray,
    rewards_full: np.ndarray,
) -> np.ndarray:
    selected_in = action_f @ adj_f
    mass_in = x @ adj_f
    if np.any(mass_in <= 0.0):
        dead = np.flatnonzero(mass_in <= 0.0)
        raise DenominatorZero(f"arms {dead.tolist()} have no in-neighbor mass")
    return np.where(selected_in > 0.0, selected_in * (1.0 - rewards_full) / mass_in, 0.0)


def estimate_rewards(
    graph: FeedbackGraph,
    action: np.ndarray,
    x: np.ndarray,
    observed_arms: np.ndarray,
    observed_values: np.ndarray,
    budget: int,
    epsilon: float,
) -> np.ndarray:
    """Reward estimates fed to the mirror step: 1 minus the loss estimate.

    For budget 1 the estimates are additionally recentered: arms whose
    loss estimate is at most 1 / ((K-1) * epsilon) contribute x_a * loss_a
    to a common shift of 1 plus that sum, subtracted from every arm. The
    shift leaves the mirror update invariant but controls the magnitude of
    the exponents.
    """
    losses = estimate_losses(graph, action, x, observed_arms, observed_values)
    rewards = 1.0 - losses
    if budget == 1:
        k = graph.num_arms
        threshold = math.inf if k == 1 else 1.0 / ((k - 1) * epsilon)
        small = losses <= threshold
        shift = 1.0 + float(np.sum(x[small] * losses[small]))
        rewards = rewards - shift
    return rewards


# ---------------------------------------------------------------------------
# closed-form tuning


def recommended_parameters(
    num_arms: int,
    budget: int,
    horizon: int,
    independence_number: int,
) -> tuple[float, float]:
    """Truncation level and learning rate achieving the analyzed regret.

    epsilon = 1 / (K T); the learning rate balances the entropy diameter
    S log(K/S) against the graph-dependent variance term. Undefined when
    budget == num_arms (the decision set is a single point).
    """
    if budget == num_arms:
        raise DegenerateTuning("budget equals the number of arms; nothing to tune")
    if not 1 <= budget < num_arms:
        raise ValueError(f"budget {budget} outside [1, {num_arms})")
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if not 1 <= independence_number <= num_arms:
        raise ValueError(f"independence number {independence_number} outside [1, {num_arms}]")
    k, s, t, alpha = float(num_arms), float(budget), float(horizon), float(independence_number)
    epsilon = 1.0 / (k * t)
    variance_rate = 6.0 * s + 4.0 * alpha * math.log(4.0 * s * k * k * t / alpha)
    eta = math.sqrt(5.0 * s * math.log(k / s) / (variance_rate * t))
    return epsilon, eta


# ---------------------------------------------------------------------------
# mirror-descent policy


class OsmdgPolicy:
    """Mirror descent over the truncated polytope with graph estimates.

    The iterate x starts uniform at budget/K. Each round: decompose x into
    decisions, draw one through the sampler, estimate every arm's reward
    from the revealed out-neighborhood, take the exponential dual step and
    project back. With the recommended tuning the expected regret on a
    strongly observable graph grows as sqrt(horizon) up to logarithms.

    ``graph_supplier`` may replace the fixed graph with a per-round one
    (called with the 0-based round index); tuning then requires explicit
    epsilon and eta or an externally supplied independence number.
    """

    name = "osmdg"

    def __init__(
        self,
        graph: FeedbackGraph,
        budget: int,
        horizon: int | None = None,
        *,
        epsilon: float | None = None,
        eta: float | None = None,
        sampler=None,
        independence_number: int | None = None,
        graph_supplier=None,
    ) -> None:
        self.graph = graph
        self.budget = int(budget)
        self.graph_supplier = graph_supplier
        if epsilon is None or eta is None:
            if horizon is None:
                raise ValueError("either (epsilon, eta) or a horizon must be given")
            if independence_number is None:
                from .feedback_graph import independence_number_exact

                if graph_supplier is not None:
                    raise ValueError(
                        "time-varying graphs need an explicit independence number"
                    )
                independence_number = independence_number_exact(graph)
            tuned_eps, tuned_eta = recommended_parameters(
                graph.num_arms, budget, horizon, independence_number
            )
            epsilon = tuned_eps if epsilon is None else epsilon
            eta = tuned_eta if eta is None else eta
        self.epsilon = float(epsilon)
        self.eta = float(eta)
        self.spec = PolytopeSpec(graph.num_arms, self.budget, self.epsilon)
        self.sampler = sampler if sampler is not None else SwapRoundingSampler()
        self.x = initial_point(self.spec)
        self.t = 0
        self.last_decomposition = None
        if graph_supplier is None:
            self._adj_f = graph.adjacency.astype(np.float64)
            if np.any(self._adj_f.sum(axis=0) == 0.0):
                dead = np.flatnonzero(self._adj_f.sum(axis=0) == 0.0)
                raise DenominatorZero(f"arms {dead.tolist()} are never observed")
        else:
            self._adj_f = None

    def _round_graph(self, t: int) -> FeedbackGraph:
        return self.graph if self.graph_supplier is None else self.graph_supplier(t)

    def select(self, rng: np.random.Generator) -> np.ndarray:
        action = self.sampler.draw(self.x, self.budget, rng)
        self.last_decomposition = getattr(self.sampler, "last_decomposition", None)
        return action

    def update(self, action: np.ndarray, feedback: FeedbackView) -> None:
        graph = self._round_graph(self.t)
        observed = out_neighborhood(graph, action)
        values = feedback.take(observed)
        if self._adj_f is not None:
            adj_f = self._adj_f
        else:
            adj_f = graph.adjacency.astype(np.float64)
        losses = _raw_loss_estimates(
            adj_f,
            np.asarray(action, dtype=np.float64),
            self.x,
            _full_rewards(graph.num_arms, observed, values),
        )
        rewards = 1.0 - losses
        if self.budget == 1:
            k = graph.num_arms
            threshold = math.inf if k == 1 else 1.0 / ((k - 1) * self.epsilon)
            small = losses <= threshold
            rewards = rewards - (1.0 + float(np.sum(self.x[small] * losses[small])))
        self.x = kl_project(dual_step(self.x, rewards, self.eta), self.spec)
        self.t += 1


# ---------------------------------------------------------------------------
# uniform baseline


class UniformRandomPolicy:
    """Plays a uniformly random budget-size subset every round."""

    name = "uniform"

    def __init__(self, num_arms: int, budget: int) -> None:
        self.num_arms = int(num_arms)
        self.budget = int(budget)

    def select(self, rng: np.random.Generator) -> np.ndarray:
        action = np.zeros(self.num_arms, dtype=np.uint8)
        action[rng.choice(self.num_arms, size=self.budget, replace=False)] = 1
        return action

    def update(self, action: np.ndarray, feedback: FeedbackView) -> None:
        pass


# ---------------------------------------------------------------------------
# decision helpers


def as_decision_tuples(decisions, num_arms: int, budget: int) -> list[tuple[int, ...]]:
    """Normalize explicit decisions to sorted arm tuples, validating size.

    A decision may be an arm list or a binary incidence vector; a length-K
    0/1 vector is read as incidence only when its ones count matches the
    budget, which makes the two encodings unambiguous.
    """
    out = []
    for d in decisions:
        arr = np.asarray(d)
        is_incidence = (
            arr.shape == (num_arms,)
            and set(np.unique(arr)).issubset({0, 1})
            and int(arr.sum()) == budget
        )
        if is_incidence:
            arms = tuple(int(a) for a in np.flatnonzero(arr))
        else:
            arms = tuple(sorted(int(a) for a in arr))
        if len(arms) != budget or len(set(arms)) != budget:
            raise BudgetExceeded(f"decision {arms} does not select exactly {budget} arms")
        if arms and (arms[0] < 0 or arms[-1] >= num_arms):
            raise BudgetExceeded(f"decision {arms} outside [0, {num_arms})")
        out.append(arms)
    if not out:
        raise ValueError("need at least one decision")
    return out


def _action_from_arms(arms, num_arms: int) -> np.ndarray:
    action = np.zeros(num_arms, dtype=np.uint8)
    action[list(arms)] = 1
    return action


# ---------------------------------------------------------------------------
# elimination over an explicit decision list


class EliminationPolicy:
    """Successive elimination driven by graph feedback.

    Keeps every decision whose empirical value is within the confidence
    radius of the best. Each round it looks at the active decisions with
    the fewest completed observations, plays the one containing the arm
    of largest out-degree in the subgraph they induce (ties to the lowest
    arm index, then the lexicographically smallest decision), and updates
    per-arm empirical means from everything the play revealed.

    The radius after the minimum observation count reaches N is

        6 * budget * sqrt(log(2 T) * log(K T / failure_prob) / N)

    recorded in ``radius_history`` alongside N.
    """

    name = "arm-elimination"

    def __init__(
        self,
        graph: FeedbackGraph,
        decisions,
        horizon: int,
        failure_prob: float,
        budget: int | None = None,
    ) -> None:
        if classify_observability(graph) is Observability.UNOBSERVABLE:
            raise NotObservable("elimination needs every arm observable")
        if not 0.0 < failure_prob < 1.0:
            raise ValueError(f"failure_prob must be in (0, 1), got {failure_prob}")
        first = np.asarray(decisions[0])
        looks_binary = first.shape == (graph.num_arms,) and set(np.unique(first)).issubset({0, 1})
        inferred = int(first.sum()) if looks_binary else len(first)
        self.budget = int(budget) if budget is not None else inferred
        self.graph = graph
        self.horizon = int(horizon)
        self.failure_prob = float(failure_prob)
        self.decisions = as_decision_tuples(decisions, graph.num_arms, self.budget)
        self.active = list(range(len(self.decisions)))
        self.counts = np.zeros(graph.num_arms, dtype=np.int64)
        self.sums = np.zeros(graph.num_arms, dtype=np.float64)
        self.radius_history: list[tuple[int, float]] = []
        self._last_candidates: list[int] = []
        self._last_min_count = 0

    def _decision_count(self, index: int) -> int:
        arms = self.decisions[index]
        return int(min(self.counts[a] for a in arms))

    def radius(self, min_count: int) -> float:
        t, k = self.horizon, self.graph.num_arms
        return 6.0 * self.budget * math.sqrt(
            math.log(2.0 * t) * math.log(k * t / self.failure_prob) / min_count
        )

    def select(self, rng: np.random.Generator) -> np.ndarray:
        if not self.active:
            raise EmptyActive("no active decisions remain")
        counts = {v: self._decision_count(v) for v in self.active}
        n_min = min(counts.values())
        candidates = [v for v in self.active if counts[v] == n_min]
        arms_union = sorted({a for v in candidates for a in self.decisions[v]})
        sub = self.graph.adjacency[np.ix_(arms_union, arms_union)]
        out_degree = sub.sum(axis=1)
        pivot = arms_union[int(np.argmax(out_degree))]
        playable = [self.decisions[v] for v in candidates if pivot in self.decisions[v]]
        choice = min(playable)
        self._last_candidates = candidates
        self._last_min_count = n_min
        return _action_from_arms(choice, self.graph.num_arms)

    def update(self, action: np.ndarray, feedback: FeedbackView) -> None:
        observed = out_neighborhood(self.graph, action)
        values = feedback.take(observed)
        self.counts[observed] += 1
        self.sums[observed] += values
        if not self._last_candidates:
            return
        finished = all(
            self._decision_count(v) > self._last_min_count for v in self._last_candidates
        )
        if not finished:
            return
        min_count = min(self._decision_count(v) for v in self.active)
        radius = self.radius(min_count)
        self.radius_history.append((min_count, radius))
        means = np.zeros_like(self.sums)
        touched = self.counts > 0
        means[touched] = self.sums[touched] / self.counts[touched]
        values_by_decision = {
            v: float(sum(means[a] for a in self.decisions[v])) for v in self.active
        }
        best = max(values_by_decision.values())
        survivors = [v for v in self.active if values_by_decision[v] >= best - radius]
        if not survivors:
            raise EmptyActive("elimination removed every decision")
        self.active = survivors


# ---------------------------------------------------------------------------
# explore-then-commit


class EtcPolicy:
    """Cycle a greedy dominating set for the exploration phase, then commit
    to the budget-many arms of highest empirical mean.

    The dominating arms are embedded into decisions by padding with the
    lowest-index other arms. Exploration length defaults to
    round(horizon^(2/3)), the rate-optimal choice for weakly observable
    graphs.
    """

    name = "etc"

    def __init__(
        self,
        graph: FeedbackGraph,
        budget: int,
        horizon: int,
        explore_rounds: int | None = None,
    ) -> None:
        self.graph = graph
        self.budget = int(budget)
        self.horizon = int(horizon)
        if explore_rounds is None:
            explore_rounds = round(horizon ** (2.0 / 3.0))
        self.explore_rounds = int(explore_rounds)
        self.dominating = greedy_dominating_set(graph)
        self._explore_actions = [
            self._embed(arm) for arm in self.dominating
        ]
        self.counts = np.zeros(graph.num_arms, dtype=np.int64)
        self.sums = np.zeros(graph.num_arms, dtype=np.float64)
        self.t = 0
        self.committed: np.ndarray | None = None

    def _embed(self, arm: int) -> np.ndarray:
        padding = [a for a in range(self.graph.num_arms) if a != arm][: self.budget - 1]
        return _action_from_arms([arm, *padding], self.graph.num_arms)

    def _commit(self) -> np.ndarray:
        means = np.zeros(self.graph.num_arms, dtype=np.float64)
        touched = self.counts > 0
        means[touched] = self.sums[touched] / self.counts[touched]
        top = np.argsort(-means, kind="stable")[: self.budget]
        return _action_from_arms(top, self.graph.num_arms)

    def select(self, rng: np.random.Generator) -> np.ndarray:
        if self.t < self.explore_rounds:
            return self._explore_actions[self.t % len(self._explore_actions)]
        if self.committed is None:
            self.committed = self._commit()
        return self.committed

    def update(self, action: np.ndarray, feedback: FeedbackView) -> None:
        if self.t < self.explore_rounds:
            observed = out_neighborhood(self.graph, action)
            values = feedback.take(observed)
            self.counts[observed] += 1
            self.sums[observed] += values
        self.t += 1
