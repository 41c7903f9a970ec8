"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`ConjugateLabError`, which is a :class:`ValueError` so callers that
only care about "bad input" can catch the builtin.
"""


class ConjugateLabError(ValueError):
    """Base class for all library errors."""


class NodeAtJump(ConjugateLabError):
    """A sample node coincides with a jump of a step symbol."""


class AtBreakpoint(ConjugateLabError):
    """Evaluation requested exactly at a jump, where the value is infinite or undefined."""


class GridNotUniform(ConjugateLabError):
    """An FFT-based method received samples on a non-uniform grid."""


class SingularNode(ConjugateLabError):
    """A principal-value evaluation point coincides with a sample node."""


class TooCloseToBoundary(ConjugateLabError):
    """A quadrature-backed disk evaluation is too close to the unit circle."""


class TooExpensive(ConjugateLabError):
    """Direct summation would need more terms than the configured cap."""


class DomainError(ConjugateLabError):
    """Argument outside the domain of a formula."""


class WeightMismatch(ConjugateLabError):
    """Cell weights of a grid do not add up to the circle length."""


class InsufficientSupport(ConjugateLabError):
    """A fit window contains levels resolved by too few grid cells."""


class ConfigError(ConjugateLabError):
    """Invalid CLI configuration (exit status 2)."""


class ComputeError(ConjugateLabError):
    """A CLI computation failed after validation (exit status 3)."""


class AtJump(AtBreakpoint):
    """Evaluation requested at the jump of a jump symbol."""
