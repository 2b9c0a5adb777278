"""Typed errors shared across the package.

Everything user-facing derives from :class:`GraphonLabError` so callers (and
the CLI) can distinguish "you asked for something invalid" (exit code 1)
from "the numerics gave up" (exit code 2).
"""


class GraphonLabError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(GraphonLabError, ValueError):
    """A constructor or function argument is outside its allowed set."""


class DomainError(GraphonLabError, ValueError):
    """An evaluation point or matrix argument violates a domain contract."""


class UnsupportedModelError(GraphonLabError, ValueError):
    """The requested operation has no implementation for this model."""


class AssumptionViolation(GraphonLabError, ValueError):
    """A standing assumption (simple eigenvalue, sup norm bound, ...) fails."""


class WrongRegimeError(GraphonLabError, ValueError):
    """A limit law was requested in the regime where it does not apply."""


class PreconditionError(GraphonLabError, ValueError):
    """A documented precondition of a diagnostic routine is not met."""


class NumericError(GraphonLabError, RuntimeError):
    """A numerical routine failed to converge or hit an ill-conditioned case."""


class ConfigError(GraphonLabError, ValueError):
    """A run configuration failed validation.

    Parameters
    ----------
    messages : list of str
        One entry per violation, each prefixed with the offending field path.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class ExperimentQualityError(GraphonLabError, RuntimeError):
    """Too many replications were discarded for the run to be trusted."""
