"""Exception hierarchy.

Input errors map to CLI exit code 1, internal invariant failures to exit code 2.
"""


class QdichError(Exception):
    """Base class for all qdich errors."""

    exit_code = 1


class QdichInputError(QdichError):
    """The request cannot be served for the given input."""

    exit_code = 1


class QdichInternalError(QdichError):
    """A pipeline invariant failed; this is a bug, not a user error."""

    exit_code = 2


class FormatError(QdichInputError):
    """A JSON file or command-line value is malformed."""


class ConfigurationError(QdichInputError):
    """A QDICH_* environment variable holds an invalid value."""


class TooManyQubits(QdichInputError):
    """State vector would exceed the configured width."""


class ExactBackendUnsupportedGate(QdichInputError):
    """A gate has entries outside Q(e^{i pi/4})."""


class ZeroPostSelectionProbability(QdichInputError):
    """The post-selection register never reads all zeros."""


class ZeroMatrixElement(QdichInputError):
    """Gadget completion gate has a zero entry in its first row."""


class NoUnitaryW(QdichInputError):
    """No unitary diagonal coupling exists for the completion gate."""


class UnsupportedGate(QdichInputError):
    """Source circuit uses a gate outside {H, Tdg, CZ}."""


class NotIntegerValued(QdichInputError):
    """Operation requires an integer-valued cost function."""


class DegreeTooHigh(QdichInputError):
    """Interaction graph has a vertex of degree three or more."""

    def __init__(self, vertex: int, degree: int):
        super().__init__(f"vertex {vertex} has interaction degree {degree} (> 2)")
        self.vertex = vertex
        self.degree = degree


class PostSelectionUnsupported(QdichInputError):
    """The degree-2 simulator only handles instances without post-selection."""


class InvariantViolated(QdichInternalError):
    """A compiler stage received input breaking its precondition."""


class NonDiagonalResidue(QdichInternalError):
    """A non-diagonal gate survived into phase collection."""
