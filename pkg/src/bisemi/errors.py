"""Exception hierarchy shared by the library and the command line."""


class DomainError(ValueError):
    """Base class for errors raised by a violated mathematical precondition."""


class NotTriangular(DomainError):
    pass


class SingularDiagonal(DomainError):
    pass


class IncompatibleRadicands(DomainError):
    pass


class PlaceOutOfRange(DomainError):
    pass


class AsymmetricSpecs(DomainError):
    pass


class UnknownRule(DomainError):
    pass


class NegativeInput(DomainError):
    pass


class GridMismatch(DomainError):
    pass


class WrongRule(DomainError):
    pass


class UnknownClass(DomainError):
    pass


class ClassOutOfRange(DomainError):
    pass


class PoleAtOne(DomainError):
    pass


class SearchExhausted(DomainError):
    pass


class SubcriticalEnergy(DomainError):
    pass


class BadReduction(DomainError):
    pass


class EvenCharacteristic(DomainError):
    pass


class SingularCurve(DomainError):
    pass
