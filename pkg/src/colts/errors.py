"""Exception types raised by the library."""


class ColtsError(Exception):
    """Base class for all library errors."""


class FewerThanThreeObservations(ColtsError):
    """A trend needs at least three observations."""


class NonMonotonePositions(ColtsError):
    """Observation positions must be strictly increasing."""


class FitDiverged(ColtsError):
    """Damped least squares exhausted without meeting the tolerance."""


class NonPositivePosition(ColtsError):
    """Curve evaluation requires a strictly positive position."""


class NonPositiveSlope(ColtsError):
    """Defensive check: a valid power curve always has positive slope."""


class PortOutOfRange(ColtsError):
    """A relevant-training probability must lie in (0, 1]."""


class PositionBeyondCorpus(ColtsError):
    """A word position past the end of the corpus."""


class MissingTrend(ColtsError):
    """No trend is available at the requested level."""


class WLevelUndefined(ColtsError):
    """Anchoring requires a defined working level."""


class ScopeBeforeX(ColtsError):
    """The scope end must not precede the evaluation position."""


class NoCLevel(ColtsError):
    """The run never reached a convergence level."""


class NonViableInflation(ColtsError):
    """The run converges too early for an inflated variant to exist."""


class ExternalCommandFailed(ColtsError):
    """An external learner command exited with nonzero status."""


class UnparsableExternalOutput(ColtsError):
    """An external learner did not print a parsable accuracy line."""


class PositionBeyondFold(ColtsError):
    """A requested curve position exceeds the fold training size."""
