"""Exception types raised by the library.

Every failure mode that callers are expected to handle gets a named type;
plain ValueError/TypeError are reserved for malformed arguments that no
caller should ever pass.
"""


class GraphBanditsError(Exception):
    """Base class for all library-specific errors."""


class InvalidArm(GraphBanditsError, ValueError):
    """An arm index is outside [0, num_arms)."""


class CapExceeded(GraphBanditsError):
    """Exact graph computation refused: the graph is larger than the cap."""


class NotObservable(GraphBanditsError):
    """The graph has an arm that no arm (including itself) ever reveals."""


class EmptyPolytope(GraphBanditsError, ValueError):
    """The truncation level is too large for any feasible point to exist."""


class InfeasiblePoint(GraphBanditsError, ValueError):
    """A point violates the box or budget constraints beyond tolerance."""


class NumericalFailure(GraphBanditsError, RuntimeError):
    """An iterative numeric routine failed to reach its tolerance."""


class ExchangeFailure(GraphBanditsError, RuntimeError):
    """Swap rounding could not find a valid swap pair (malformed input)."""


class BadPartition(GraphBanditsError, ValueError):
    """A clique list is not a partition of the arms into equal-size blocks."""


class DenominatorZero(GraphBanditsError, RuntimeError):
    """A reward estimator denominator vanished: some arm is never observed."""


class DegenerateTuning(GraphBanditsError, ValueError):
    """Closed-form tuning is undefined for this problem size."""


class EmptyActive(GraphBanditsError, RuntimeError):
    """The elimination policy ran out of active decisions."""


class BudgetExceeded(GraphBanditsError, ValueError):
    """An explicit decision does not select exactly the budgeted arm count."""


class ExhaustedSequence(GraphBanditsError, IndexError):
    """A fixed reward sequence was asked for a round beyond its horizon."""


class AlignmentBroken(GraphBanditsError, RuntimeError):
    """A clique-aligned run produced an iterate or action off the clique grid."""


class FeedbackAccessError(GraphBanditsError, RuntimeError):
    """A policy read a reward outside the played action's out-neighborhood."""


class InsufficientData(GraphBanditsError, ValueError):
    """A scaling fit was requested with too few grid points or seeds."""


class ConfigError(GraphBanditsError, ValueError):
    """An experiment configuration file is malformed or inconsistent."""
