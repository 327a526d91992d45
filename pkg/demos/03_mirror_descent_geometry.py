"""The mirror-descent machinery, one piece at a time.

The policy keeps a fractional point x in the truncated feasible set
{epsilon <= x_i <= 1, sum x = S}. Each round it decomposes x into at
most K decisions, plays one, estimates every arm's reward from what the
feedback graph revealed, multiplies x by exp(eta * estimate), and
projects back under the KL divergence. This script walks those steps on
a small example with deterministic rewards.
"""

import numpy as np

from graphbandits import (
    PolytopeSpec,
    SwapRoundingSampler,
    decompose,
    dual_step,
    estimate_losses,
    initial_point,
    kl_project,
    out_neighborhood,
    self_loops_graph,
)
from graphbandits.rng import policy_rng

K, S, eta = 5, 2, 0.1
spec = PolytopeSpec(K, S, epsilon=0.01)
graph = self_loops_graph(K)
true_rewards = np.array([0.9, 0.8, 0.3, 0.2, 0.1])

x = initial_point(spec)
print("start uniform:", x.tolist())
print()

# the full loop by hand: decompose, sample, estimate, step, project.
# the sampler is what makes the importance-weighted estimates unbiased;
# mass then drifts onto the two good arms
sampler = SwapRoundingSampler()
rng = policy_rng(0)
for step in range(400):
    action = sampler.draw(x, S, rng)
    observed = out_neighborhood(graph, action)
    losses = estimate_losses(graph, action, x, observed, true_rewards[observed])
    x = kl_project(dual_step(x, 1.0 - losses, eta), spec)
    if (step + 1) % 100 == 0:
        print(f"after {step + 1:3d} steps: x = {np.round(x, 3).tolist()}")

print()
print("projection sanity on a hand case: w = (100, 1, 1), S = 2")
proj = kl_project(np.array([100.0, 1.0, 1.0]), PolytopeSpec(3, 2, 0.01))
print("  ->", np.round(proj, 6).tolist())
# the big weight caps at 1 and the rest split the remaining unit evenly

print()
print("decomposition of the fully fractional point (1, 0.8, 0.2):")
for w, v in decompose(np.array([1.0, 0.8, 0.2]), 2).terms():
    print(f"  weight {w:.4f} on arms {np.flatnonzero(v).tolist()}")
