"""Exception hierarchy shared by all modules."""


class MunuError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatch(MunuError):
    pass


class CodomainMismatch(MunuError):
    pass


class SizeLimitExceeded(MunuError):
    pass


class ShapeMismatch(MunuError):
    pass


class EmptyIntersection(MunuError):
    pass


class FunctorMismatch(MunuError):
    pass


class EmptyFZero(MunuError):
    """The functor sends the empty set to the empty set, so no base point exists."""


class BoundExceeded(MunuError):
    pass


class ParseError(MunuError):
    pass


class GroupAxiomError(MunuError):
    pass
