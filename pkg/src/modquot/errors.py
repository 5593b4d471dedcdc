"""Exception types raised across the package."""


class ModquotError(Exception):
    pass


class DomainError(ModquotError, ValueError):
    """Input outside the domain of an operation."""


class GroupTooLarge(ModquotError):
    """Enumerating a permutation group exceeded the configured cap."""


class SizeCapExceeded(ModquotError):
    """A full-basis or profile-basis expansion would be too large."""


class CriterionInapplicable(ModquotError):
    """The inequality criterion does not apply to the given input."""


class Unsupported(ModquotError):
    """Parameters outside the range covered by the divisor catalog."""
