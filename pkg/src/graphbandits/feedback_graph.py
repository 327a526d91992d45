"""Directed feedback graphs over arms and their combinatorial invariants.

A feedback graph on K arms prescribes which rewards become visible when an
arm is selected: playing arm i reveals the reward of every arm in its
out-neighborhood. The quantities computed here (observability class,
independence number of the symmetrized graph, greedy dominating sets)
drive both policy tuning and the hard-instance constructions.

Conventions:
  * arms are 0-indexed,
  * self-loops are meaningful (an arm that observes itself),
  * the independence number ignores self-loops and edge orientation.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, InvalidArm, NotObservable

# Exact independence-number computation is refused above this many arms
# unless the caller raises the cap explicitly.
EXACT_INDEPENDENCE_CAP = 24


class Observability(enum.Enum):
    STRONGLY_OBSERVABLE = "strongly_observable"
    WEAKLY_OBSERVABLE = "weakly_observable"
    UNOBSERVABLE = "unobservable"


class FeedbackGraph:
    """Immutable directed graph on ``num_arms`` arms.

    Stores edges both as per-arm sorted tuples and as a dense boolean
    adjacency matrix ``adjacency[i, j] == True`` iff playing i reveals j.
    Dense storage is deliberate: the estimator inner loop is a
    matrix-vector product against the transposed adjacency.
    """

    __slots__ = ("num_arms", "out_edges", "adjacency")

    def __init__(self, num_arms: int, edges) -> None:
        if num_arms < 1:
            raise ValueError(f"num_arms must be positive, got {num_arms}")
        adjacency = np.zeros((num_arms, num_arms), dtype=bool)
        for edge in edges:
            i, j = int(edge[0]), int(edge[1])
            if not (0 <= i < num_arms and 0 <= j < num_arms):
                raise InvalidArm(f"edge ({i}, {j}) outside [0, {num_arms})")
            adjacency[i, j] = True
        self.num_arms = int(num_arms)
        self.adjacency = adjacency
        self.adjacency.setflags(write=False)
        self.out_edges = tuple(
            tuple(int(j) for j in np.flatnonzero(adjacency[i])) for i in range(num_arms)
        )

    def out_neighbors(self, arm: int) -> tuple[int, ...]:
        if not 0 <= arm < self.num_arms:
            raise InvalidArm(f"arm {arm} outside [0, {self.num_arms})")
        return self.out_edges[arm]

    def in_neighbors(self, arm: int) -> tuple[int, ...]:
        if not 0 <= arm < self.num_arms:
            raise InvalidArm(f"arm {arm} outside [0, {self.num_arms})")
        return tuple(int(i) for i in np.flatnonzero(self.adjacency[:, arm]))

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.sum())

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i in range(self.num_arms) for j in self.out_edges[i]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FeedbackGraph)
            and self.num_arms == other.num_arms
            and bool(np.array_equal(self.adjacency, other.adjacency))
        )

    def __hash__(self) -> int:
        return hash((self.num_arms, self.adjacency.tobytes()))

    def __repr__(self) -> str:
        return f"FeedbackGraph(num_arms={self.num_arms}, num_edges={self.num_edges})"


@dataclass(frozen=True)
class GraphProfile:
    """Summary invariants of a feedback graph."""

    num_arms: int
    num_edges: int
    observability: Observability
    independence_number: int
    independence_is_exact: bool
    dominating_set_size: int | None

    def to_dict(self) -> dict:
        return {
            "num_arms": self.num_arms,
            "num_edges": self.num_edges,
            "observability": self.observability.value,
            "independence_number": self.independence_number,
            "independence_is_exact": self.independence_is_exact,
            "dominating_set_size": self.dominating_set_size,
        }


# ---------------------------------------------------------------------------
# generators


def complete_graph(num_arms: int) -> FeedbackGraph:
    """All edges present, self-loops included (full information)."""
    return FeedbackGraph(num_arms, [(i, j) for i in range(num_arms) for j in range(num_arms)])


def self_loops_graph(num_arms: int) -> FeedbackGraph:
    """Only self-loops: the classical semi-bandit regime."""
    return FeedbackGraph(num_arms, [(i, i) for i in range(num_arms)])


def cycle_graph(num_arms: int, with_self_loops: bool = True) -> FeedbackGraph:
    """Bidirectional ring; optionally each arm also observes itself."""
    edges = []
    for i in range(num_arms):
        edges.append((i, (i + 1) % num_arms))
        edges.append(((i + 1) % num_arms, i))
        if with_self_loops:
            edges.append((i, i))
    return FeedbackGraph(num_arms, edges)


def clique_partition_graph(num_cliques: int, clique_size: int) -> FeedbackGraph:
    """Disjoint bidirectional cliques (with self-loops) of equal size."""
    edges = []
    for c in range(num_cliques):
        block = range(c * clique_size, (c + 1) * clique_size)
        edges.extend((i, j) for i in block for j in block)
    return FeedbackGraph(num_cliques * clique_size, edges)


def hub_graph(num_arms: int) -> FeedbackGraph:
    """One revealing hub: arm 0 observes everything (itself included),
    every other arm observes nothing. Weakly observable for K >= 3."""
    return FeedbackGraph(num_arms, [(0, j) for j in range(num_arms)])


GENERATORS = {
    "complete": complete_graph,
    "self_loops": self_loops_graph,
    "cycle": cycle_graph,
    "clique_partition": clique_partition_graph,
    "hub": hub_graph,
}


def make_graph(name: str, **params) -> FeedbackGraph:
    """Build a named graph, e.g. ``make_graph("self_loops", num_arms=10)``."""
    if name not in GENERATORS:
        raise ValueError(f"unknown graph generator {name!r}; known: {sorted(GENERATORS)}")
    return GENERATORS[name](**params)


# ---------------------------------------------------------------------------
# JSON round-trip


def graph_to_json(graph: FeedbackGraph) -> str:
    return json.dumps({"num_arms": graph.num_arms, "edges": graph.edge_list()})


def graph_from_json(text: str) -> FeedbackGraph:
    payload = json.loads(text)
    return FeedbackGraph(payload["num_arms"], payload["edges"])


def load_graph(path) -> FeedbackGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())


def save_graph(graph: FeedbackGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_json(graph))


# ---------------------------------------------------------------------------
# observability


def classify_observability(graph: FeedbackGraph) -> Observability:
    """Strong: every arm has a self-loop or is observed by all other arms.
    Weak: every arm is observed by someone. Otherwise unobservable."""
    adj = graph.adjacency
    k = graph.num_arms
    in_degree = adj.sum(axis=0)
    self_loop = np.diagonal(adj)
    # "observed by all others" is only meaningful for arms that are in fact
    # observed by someone; a fully isolated arm is never strongly observable.
    observed_by_all_others = ((in_degree - self_loop) == (k - 1)) & (in_degree >= 1)
    if np.all(self_loop | observed_by_all_others):
        return Observability.STRONGLY_OBSERVABLE
    if np.all(in_degree >= 1):
        return Observability.WEAKLY_OBSERVABLE
    return Observability.UNOBSERVABLE


# ---------------------------------------------------------------------------
# independence number (exact, branch and bound)


def _symmetrized_masks(graph: FeedbackGraph) -> list[int]:
    """Per-arm bitmask of undirected neighbors, self-loops dropped."""
    sym = graph.adjacency | graph.adjacency.T
    masks = []
    for i in range(graph.num_arms):
        mask = 0
        for j in np.flatnonzero(sym[i]):
            if j != i:
                mask |= 1 << int(j)
        masks.append(mask)
    return masks


def _clique_cover_bound(candidates: int, masks: list[int]) -> int:
    """Greedy clique cover of the candidate set; its size bounds the
    independence number of the induced subgraph from above."""
    remaining = candidates
    cliques = 0
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        clique_common = masks[v]
        remaining &= remaining - 1
        # grow a clique from v: every added vertex must neighbor all members
        grow = remaining & clique_common
        while grow:
            u = (grow & -grow).bit_length() - 1
            clique_common &= masks[u]
            remaining &= ~(1 << u)
            grow = remaining & clique_common
        cliques += 1
    return cliques


def independence_number_exact(graph: FeedbackGraph, cap: int = EXACT_INDEPENDENCE_CAP) -> int:
    """Largest set of arms with no symmetrized non-loop edge between them.

    Branch and bound over bitmask candidate sets. Pruning uses both the
    candidate popcount and a greedy clique-cover bound. Raises CapExceeded
    for graphs above ``cap`` arms; exact search is exponential and the cap
    guards against accidental huge inputs.
    """
    k = graph.num_arms
    if k > cap:
        raise CapExceeded(f"exact independence number capped at {cap} arms, graph has {k}")
    masks = _symmetrized_masks(graph)
    best = 0

    def expand(candidates: int, size: int) -> None:
        nonlocal best
        if size + int.bit_count(candidates) <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        if size + _clique_cover_bound(candidates, masks) <= best:
            return
        v = (candidates & -candidates).bit_length() - 1
        expand(candidates & ~((1 << v) | masks[v]), size + 1)
        expand(candidates & ~(1 << v), size)

    expand((1 << k) - 1, 0)
    return best


def greedy_independent_set(graph: FeedbackGraph) -> list[int]:
    """Maximal independent set by lowest-index greedy; a lower bound on the
    independence number, used for profiles of graphs above the exact cap."""
    masks = _symmetrized_masks(graph)
    chosen: list[int] = []
    blocked = 0
    for v in range(graph.num_arms):
        if not blocked & (1 << v):
            chosen.append(v)
            blocked |= (1 << v) | masks[v]
    return chosen


# ---------------------------------------------------------------------------
# dominating sets


def greedy_dominating_set(graph: FeedbackGraph) -> list[int]:
    """Greedy cover: repeatedly pick the arm observing the most not-yet-
    dominated arms (ties to the lowest index) until every arm is dominated.

    Raises NotObservable if some arm has an empty in-neighborhood, since no
    set can dominate it. The greedy set is within a (1 + ln K) factor of
    the smallest dominating set.
    """
    adj = graph.adjacency
    k = graph.num_arms
    undominated = np.ones(k, dtype=bool)
    chosen: list[int] = []
    while undominated.any():
        coverage = adj[:, undominated].sum(axis=1)
        pick = int(np.argmax(coverage))  # argmax takes the lowest index on ties
        if coverage[pick] == 0:
            missing = np.flatnonzero(undominated)
            raise NotObservable(f"arms {missing.tolist()} have no in-neighbors")
        chosen.append(pick)
        undominated &= ~adj[pick]
    return chosen


# ---------------------------------------------------------------------------
# subgraphs and neighborhoods


def restricted_subgraph(graph: FeedbackGraph, arms) -> tuple[FeedbackGraph, tuple[int, ...]]:
    """Induced subgraph on ``arms``; returns (subgraph, original ids).

    Arm i of the subgraph corresponds to original id ``original[i]``;
    originals are kept in sorted order.
    """
    ids = sorted({int(a) for a in arms})
    for a in ids:
        if not 0 <= a < graph.num_arms:
            raise InvalidArm(f"arm {a} outside [0, {graph.num_arms})")
    if not ids:
        raise ValueError("restricted_subgraph needs at least one arm")
    index = {a: i for i, a in enumerate(ids)}
    sub_edges = [
        (index[i], index[j])
        for i in ids
        for j in graph.out_edges[i]
        if j in index
    ]
    return FeedbackGraph(len(ids), sub_edges), tuple(ids)


def out_neighborhood(graph: FeedbackGraph, action: np.ndarray) -> np.ndarray:
    """Arms revealed by playing ``action`` (binary incidence vector):
    the union of out-neighborhoods of its selected arms, sorted."""
    selected = np.asarray(action, dtype=bool)
    if selected.shape != (graph.num_arms,):
        raise ValueError(f"action shape {selected.shape} != ({graph.num_arms},)")
    if not selected.any():
        return np.empty(0, dtype=np.int64)
    revealed = graph.adjacency[selected].any(axis=0)
    return np.flatnonzero(revealed)


# ---------------------------------------------------------------------------
# profile


def graph_profile(graph: FeedbackGraph, cap: int = EXACT_INDEPENDENCE_CAP) -> GraphProfile:
    """Observability class, independence number (exact under the cap, greedy
    lower bound above it) and greedy dominating-set size when one exists."""
    obs = classify_observability(graph)
    if graph.num_arms <= cap:
        alpha, exact = independence_number_exact(graph, cap=cap), True
    else:
        alpha, exact = len(greedy_independent_set(graph)), False
    if obs is Observability.UNOBSERVABLE:
        dom_size: int | None = None
    else:
        dom_size = len(greedy_dominating_set(graph))
    return GraphProfile(
        num_arms=graph.num_arms,
        num_edges=graph.num_edges,
        observability=obs,
        independence_number=alpha,
        independence_is_exact=exact,
        dominating_set_size=dom_size,
    )


def dominating_set_log_bound(num_arms: int) -> float:
    """The multiplicative guarantee of the greedy dominating set."""
    return 1.0 + math.log(num_arms)
