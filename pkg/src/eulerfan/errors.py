"""Exception hierarchy shared by every module of the package."""


class EulerFanError(Exception):
    """Base class for all package errors."""


class DomainError(EulerFanError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class NegativeRadicand(DomainError):
    pass


class NotRepresentable(EulerFanError, ArithmeticError):
    """An exact result would leave the field Q(sqrt 2)."""


class ExactnessUnavailable(EulerFanError):
    """Exact arithmetic was requested for a transcendental or irrational quantity."""


class ModeMismatch(EulerFanError, TypeError):
    """Floating and exact scalars were mixed in one computation."""


class DegenerateSpeeds(DomainError):
    pass


class DegenerateCoefficient(DomainError):
    pass


class NoSignChange(EulerFanError):
    pass


class SubsolutionViolated(EulerFanError):
    """A root of the energy system was found but a strict side condition fails there.

    The offending :class:`~eulerfan.apex.ApexResult` is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class GridTooLarge(DomainError):
    pass


class NotRarefactionConnectable(DomainError):
    pass


class UnsupportedTransverse(DomainError):
    pass
