"""Exception hierarchy.

Every error raised by the library derives from :class:`SciscalError`.
``PrecisionError`` is kept apart from the domain errors because the CLI maps
it to its own exit code: it means "declare tighter guards", not "bad input".
"""


class SciscalError(ValueError):
    pass


class PrecisionError(SciscalError):
    """Guard intervals are too coarse to order two distinct scalars."""


class DomainError(SciscalError):
    """Input violates a precondition of an operation."""


class ContextMismatch(DomainError):
    pass


class DuplicateSymbol(DomainError):
    pass


class InvalidGuard(DomainError):
    pass


class EmptyInterval(DomainError):
    pass


class NotInKernel(DomainError):
    pass


class NonpositiveLength(DomainError):
    pass


class NonpositiveFactor(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class InvalidMorphism(DomainError):
    pass


class IncompatibleShapes(DomainError):
    pass


class TargetMismatch(DomainError):
    pass


class NotSameMorphism(DomainError):
    pass


class NotACycle(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class IrrationalProduct(DomainError):
    """A product of two irrational scalars would leave the scalar model."""
