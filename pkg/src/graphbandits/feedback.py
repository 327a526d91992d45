"""Access-guarded per-round feedback.

The experiment loop knows every arm's reward each round but policies are
only entitled to the out-neighborhood of the action they played. Policies
therefore receive a FeedbackView: reads inside the revealed set succeed
and are recorded, any read outside raises and fails the run. This turns
"the policy never peeks" from a convention into a checked invariant.
"""

from __future__ import annotations

import numpy as np

from .errors import FeedbackAccessError


class FeedbackView:
    __slots__ = ("_values", "_allowed", "read_mask")

    def __init__(self, values: np.ndarray, allowed_mask: np.ndarray) -> None:
        self._values = values
        self._allowed = allowed_mask
        self.read_mask = np.zeros(values.shape[0], dtype=bool)

    @property
    def num_arms(self) -> int:
        return self._values.shape[0]

    @property
    def arms(self) -> np.ndarray:
        """Arms whose rewards this round's action revealed (sorted)."""
        return np.flatnonzero(self._allowed)

    def take(self, arms: np.ndarray) -> np.ndarray:
        """Rewards for the given arms; raises if any arm was not revealed."""
        arms = np.asarray(arms, dtype=np.int64)
        if arms.size and not bool(np.all(self._allowed[arms])):
            hidden = [int(a) for a in arms if not self._allowed[a]]
            raise FeedbackAccessError(f"read of unrevealed arms {hidden}")
        self.read_mask[arms] = True
        return self._values[arms]

    def reward(self, arm: int) -> float:
        if not self._allowed[arm]:
            raise FeedbackAccessError(f"read of unrevealed arm {arm}")
        self.read_mask[arm] = True
        return float(self._values[arm])
