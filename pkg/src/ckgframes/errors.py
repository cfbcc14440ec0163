"""Exception hierarchy shared by all toolkit modules."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(ToolkitError):
    """Operands do not conform (matrix shapes, block lengths, ambient dims)."""


class NotHermitian(ToolkitError):
    """A matrix required to be Hermitian deviates beyond tolerance."""


class NotPsd(ToolkitError):
    """A matrix required to be positive semidefinite is not."""


class NotAFrame(ToolkitError):
    """The operator family does not satisfy the required frame condition."""


class InvalidPair(ToolkitError):
    """A dual pair fails its factorization residual contract."""


class DegenerateDual(ToolkitError):
    """The dual family is zero, so no lower bound can be derived from it."""


class InadmissibleParams(ToolkitError):
    """Perturbation parameters violate the admissibility condition."""


class InvalidDelta(ToolkitError):
    """Scalar perturbation size outside [0, 1)."""


class InvalidConfig(ToolkitError):
    """A scenario configuration is structurally valid but semantically wrong."""


class ParseError(ToolkitError):
    """A config file could not be read or parsed."""
