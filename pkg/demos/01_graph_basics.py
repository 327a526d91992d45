"""Feedback graphs and their structural numbers.

Playing an arm reveals the rewards of its out-neighbors. Two quantities
decide how hard a graph makes the learning problem: the independence
number alpha (largest set of arms none of which observes another, loops
ignored) controls the regret rate on strongly observable graphs, and the
domination number delta (smallest set whose out-neighborhoods cover
everything) controls exploration cost on weakly observable ones.
"""

from graphbandits import (
    FeedbackGraph,
    classify_observability,
    complete_graph,
    cycle_graph,
    graph_profile,
    greedy_dominating_set,
    hub_graph,
    independence_number_exact,
    self_loops_graph,
)

print("three classical regimes, K = 8 arms")
print("-" * 50)
for name, graph in [
    ("complete (full information)", complete_graph(8)),
    ("self-loops only (semi-bandit)", self_loops_graph(8)),
    ("bidirectional cycle", cycle_graph(8)),
]:
    alpha = independence_number_exact(graph)
    obs = classify_observability(graph).value
    print(f"{name:32s} alpha = {alpha}  ({obs})")

# alpha interpolates between 1 (complete: one observation reveals all)
# and K (self-loops: every arm must be played to be seen); the cycle
# sits in between at K/2.

print()
print("a weakly observable graph: the hub")
print("-" * 50)
hub = hub_graph(8)
print("observability:", classify_observability(hub).value)
print("greedy dominating set:", greedy_dominating_set(hub))
# arm 0 observes everyone and nobody observes arm 0's rivals otherwise,
# so all exploration has to pass through the hub.

print()
print("a hand-built graph and its full profile")
print("-" * 50)
graph = FeedbackGraph(5, [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4),
                          (0, 1), (1, 0), (2, 3), (3, 4)])
profile = graph_profile(graph)
for key, value in profile.to_dict().items():
    print(f"  {key}: {value}")
