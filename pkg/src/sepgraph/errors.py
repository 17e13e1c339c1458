"""Exception hierarchy.

Validation problems subclass :class:`ValueError`; everything raised while a
well-formed computation cannot proceed subclasses :class:`ComputationError`.
The CLI maps the two families onto exit codes 1 and 2.
"""


class SepGraphError(Exception):
    pass


class ValidationError(SepGraphError, ValueError):
    pass


class ComputationError(SepGraphError):
    pass


class NoPath(ComputationError):
    """No path joins the two terminals."""


class NotSeparating(ComputationError):
    """The set has width 0 between the terminals."""


class NonConvergence(ComputationError):
    pass


class CapExceeded(ComputationError):
    """Graph too large for an exhaustive reference routine."""


class ZeroFlow(ComputationError):
    pass


class DegenerateDuals(ComputationError):
    pass


class CoincidentPoles(ValidationError):
    pass


class TerminalsMerged(ComputationError):
    """Both terminals snap to the same net vertex."""
