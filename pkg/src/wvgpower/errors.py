"""Exception hierarchy.

Validation problems derive from ``ValueError`` so callers that only care
about "bad input" can catch that; resource guards derive from
``ResourceLimit`` and are what the CLI maps to exit status 3.
"""


class WVGError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(WVGError, ValueError):
    pass


class EmptyPlayerList(ValidationError):
    pass


class NegativeWeight(ValidationError):
    pass


class QuotaOutOfRange(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class EmptyCoalition(ValidationError):
    pass


class WeightMismatch(ValidationError):
    pass


class BadPartCount(ValidationError):
    pass


class InvalidInstance(ValidationError):
    pass


class NotDivisibleBy8(InvalidInstance):
    pass


class OddTotal(InvalidInstance):
    pass


class WrongVariant(InvalidInstance):
    pass


class ResourceLimit(WVGError):
    """A configured size cap would be exceeded."""


class TooLarge(ResourceLimit):
    """An exhaustive oracle was asked for an instance beyond its guard."""
