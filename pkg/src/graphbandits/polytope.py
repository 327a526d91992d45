"""The truncated budgeted-selection polytope and its mirror-map geometry.

Decisions are binary vectors with exactly ``budget`` ones. Mirror-descent
iterates live in the truncated convex hull

    { x : epsilon <= x_i <= 1,  sum_i x_i = budget }

under the negative-entropy mirror map F(x) = sum_i (x_i log x_i - x_i).
This module provides the feasible starting point, the exponential dual
step, the Bregman (KL) projection back onto the polytope, and the greedy
peeling that writes any feasible point as a convex combination of at most
K decisions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import EmptyPolytope, InfeasiblePoint, NumericalFailure

logger = logging.getLogger(__name__)

# Feasibility checks (box bounds, budget sum, reconstruction) share one
# absolute tolerance across the library.
FEASIBILITY_TOL = 1e-9

# The KL projection bisects until the coordinate sum matches the budget to
# this tolerance (or the iteration cap is hit).
PROJECTION_SUM_TOL = 1e-12
PROJECTION_MAX_ITERS = 200

# Exponents in the dual step are clamped to keep exp() finite; activations
# are logged because they mean the learning rate or estimates are extreme.
EXPONENT_CLAMP = 700.0

# Dual points must stay strictly positive for the mirror map to be defined.
_POSITIVE_FLOOR = 1e-300

# Greedy peeling stops once the unassigned mass is below this.
_MASS_TOL = 1e-12


@dataclass(frozen=True)
class PolytopeSpec:
    """Problem geometry: K arms, a selection budget, and a truncation level.

    ``epsilon`` must lie in (0, budget / num_arms]; beyond that the
    truncated polytope is empty.
    """

    num_arms: int
    budget: int
    epsilon: float

    def __post_init__(self) -> None:
        if not 1 <= self.budget <= self.num_arms:
            raise ValueError(f"budget {self.budget} outside [1, {self.num_arms}]")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.epsilon > self.budget / self.num_arms:
            raise EmptyPolytope(
                f"epsilon {self.epsilon} exceeds budget/num_arms = "
                f"{self.budget / self.num_arms}; no feasible point exists"
            )


def validate_point(x: np.ndarray, spec: PolytopeSpec, tol: float = FEASIBILITY_TOL) -> np.ndarray:
    """Check box and budget constraints; returns x as a float array."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.num_arms,):
        raise InfeasiblePoint(f"point shape {x.shape} != ({spec.num_arms},)")
    if np.min(x) < spec.epsilon - tol or np.max(x) > 1.0 + tol:
        raise InfeasiblePoint(
            f"coordinates outside [{spec.epsilon}, 1]: min={np.min(x)}, max={np.max(x)}"
        )
    total = float(np.sum(x))
    if abs(total - spec.budget) > tol:
        raise InfeasiblePoint(f"coordinate sum {total} != budget {spec.budget}")
    return x


def initial_point(spec: PolytopeSpec) -> np.ndarray:
    """The uniform point budget/K per arm; feasible for every valid spec."""
    return np.full(spec.num_arms, spec.budget / spec.num_arms, dtype=np.float64)


def dual_step(x: np.ndarray, estimates: np.ndarray, learning_rate: float) -> np.ndarray:
    """Exponential-gradient step: w_i = x_i * exp(learning_rate * estimates_i).

    Exponents are clamped to +-700 (logged when active) and the result is
    floored at a tiny positive value so downstream logs stay finite.
    """
    x = np.asarray(x, dtype=np.float64)
    exponents = learning_rate * np.asarray(estimates, dtype=np.float64)
    clipped = np.clip(exponents, -EXPONENT_CLAMP, EXPONENT_CLAMP)
    if np.any(clipped != exponents):
        worst = float(np.max(np.abs(exponents)))
        logger.warning("dual_step exponent clamp active (|exponent| up to %.3g)", worst)
    w = x * np.exp(clipped)
    return np.maximum(w, _POSITIVE_FLOOR)


def kl_project(w: np.ndarray, spec: PolytopeSpec) -> np.ndarray:
    """Bregman projection of a positive dual point onto the polytope.

    Under negative entropy the projection is a clipped rescaling: there is
    a scalar theta with x_i = clip(w_i * e^theta, epsilon, 1) and
    sum_i x_i = budget. The coordinate sum is nondecreasing in theta, so
    plain bisection is unconditionally convergent; it runs until the sum
    matches the budget to PROJECTION_SUM_TOL.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (spec.num_arms,):
        raise ValueError(f"dual point shape {w.shape} != ({spec.num_arms},)")
    if not np.all(w > 0.0) or not np.all(np.isfinite(w)):
        raise ValueError("dual point must be strictly positive and finite")

    # At theta_lo every coordinate clips to epsilon (sum <= budget); at
    # theta_hi every coordinate clips to 1 (sum >= budget).
    theta_lo = float(np.log(spec.epsilon) - np.log(np.max(w)))
    theta_hi = float(-np.log(np.min(w)))
    x = np.empty_like(w)

    def eval_sum(theta: float) -> float:
        # overflow to inf is harmless: the clip to 1 removes it
        with np.errstate(over="ignore"):
            np.multiply(w, np.exp(theta), out=x)
        np.clip(x, spec.epsilon, 1.0, out=x)
        return float(np.sum(x))

    target = float(spec.budget)
    residual = eval_sum(theta_hi) - target
    if abs(residual) > PROJECTION_SUM_TOL and residual < 0.0:
        raise NumericalFailure("projection bracket failed: sum below budget at theta_hi")
    for _ in range(PROJECTION_MAX_ITERS):
        mid = 0.5 * (theta_lo + theta_hi)
        residual = eval_sum(mid) - target
        if abs(residual) <= PROJECTION_SUM_TOL:
            return x
        if residual < 0.0:
            theta_lo = mid
        else:
            theta_hi = mid
    # Bisection exhausted its budget: accept the midpoint only if it is
    # within the library-wide feasibility tolerance, else report failure.
    if abs(residual) <= FEASIBILITY_TOL:
        logger.warning("kl_project stopped at |sum - budget| = %.3g", abs(residual))
        return x
    raise NumericalFailure(f"kl_project did not converge: |sum - budget| = {abs(residual):.3g}")


@dataclass(frozen=True)
class VertexDecomposition:
    """Convex combination of decisions: ``weights`` (sums to 1) and a
    matching matrix of binary rows ``vertices`` (one decision per row)."""

    weights: np.ndarray
    vertices: np.ndarray

    @property
    def num_terms(self) -> int:
        return int(self.weights.shape[0])

    def reconstruct(self) -> np.ndarray:
        """The point this decomposition represents: sum_j w_j v_j."""
        return self.weights @ self.vertices

    def terms(self):
        for j in range(self.num_terms):
            yield float(self.weights[j]), self.vertices[j]


def decompose(x: np.ndarray, budget: int) -> VertexDecomposition:
    """Write a feasible point as a convex combination of <= K decisions.

    Greedy peeling: repeatedly select the ``budget`` largest residual
    coordinates (ties to the lowest index) and peel off the largest weight
    keeping the residual feasible. Each step either zeroes a selected
    coordinate or pins an unselected one to the remaining mass, so the
    loop finishes within K steps.

    Accepts any x with 0 <= x_i <= 1 and sum x = budget (within 1e-9);
    epsilon-truncation is irrelevant here.
    """
    x = np.asarray(x, dtype=np.float64)
    k = x.shape[0]
    if not 1 <= budget <= k:
        raise ValueError(f"budget {budget} outside [1, {k}]")
    if np.min(x) < -FEASIBILITY_TOL or np.max(x) > 1.0 + FEASIBILITY_TOL:
        raise InfeasiblePoint(f"coordinates outside [0, 1]: min={np.min(x)}, max={np.max(x)}")
    if abs(float(np.sum(x)) - budget) > FEASIBILITY_TOL:
        raise InfeasiblePoint(f"coordinate sum {float(np.sum(x))} != budget {budget}")

    residual = np.clip(x, 0.0, 1.0)
    mass = 1.0
    weights: list[float] = []
    rows: list[np.ndarray] = []
    # 2k iterations: exact arithmetic finishes in k (every step zeroes a
    # selected coordinate or pins an unselected one), round-off may need
    # a few cleanup steps on sub-ulp leftovers
    for _ in range(2 * k):
        if mass <= _MASS_TOL:
            break
        order = np.argsort(-residual, kind="stable")
        selected = order[:budget]
        vertex = np.zeros(k, dtype=np.uint8)
        vertex[selected] = 1
        gamma = float(np.min(residual[selected]))
        if budget < k:
            # weight is also capped so unselected coordinates stay <= mass
            gamma = min(gamma, float(mass - np.max(residual[order[budget:]])))
        if gamma <= 0.0:
            # the remaining slack sits on unselected coordinates; projector
            # and round-off slack this small is folded into the last vertex
            if mass <= FEASIBILITY_TOL:
                break
            raise NumericalFailure(
                f"greedy peeling stalled with {mass:.3g} mass remaining"
            )
        weights.append(gamma)
        rows.append(vertex)
        residual[selected] = np.maximum(residual[selected] - gamma, 0.0)
        mass -= gamma
    if mass > FEASIBILITY_TOL:
        raise NumericalFailure(f"greedy peeling left {mass:.3g} mass after {k} steps")
    return VertexDecomposition(
        weights=np.asarray(weights, dtype=np.float64),
        vertices=np.asarray(rows, dtype=np.uint8),
    )
