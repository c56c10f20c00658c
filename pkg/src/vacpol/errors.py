"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: usage errors exit 2, domain errors
exit 3, quadrature failures exit 4, verification failures exit 5.
"""


class VacpolError(Exception):
    """Base class for all library errors."""


class UsageError(VacpolError):
    """Bad CLI arguments or malformed configuration input."""


class DomainError(VacpolError):
    """Evaluation requested outside the mathematical domain of an operation."""


class SingularInputError(DomainError):
    """Input sits on a pole or branch point (on-shell momentum, log cut, ...)."""


class PoleError(DomainError):
    """A meromorphic function was evaluated at one of its poles."""


class PoleCollisionError(DomainError):
    """Contour pinch: poles that must be separated are numerically coincident."""


class QuadratureError(VacpolError):
    """A quadrature failed to reach its tolerance within the given budget."""
