"""Exception types shared across the package."""

from __future__ import annotations


class MgnefError(Exception):
    """Base class for every error raised by this package."""


class NonSquareError(MgnefError):
    """Determinant requested for a non-square matrix."""


class GenusMismatchError(MgnefError):
    """Two objects with different genus contexts were combined."""


class UnsupportedGenusError(MgnefError):
    """Genus outside the range supported by the requested operation."""


class IndexOutOfRangeError(MgnefError):
    """Boundary or curve index outside its legal range."""


class NegativeCoefficientError(MgnefError):
    """A coefficient that must be nonnegative was negative."""


class NotPointedError(MgnefError):
    """Extreme rays requested for a cone that contains a line."""


class DimensionLimitError(MgnefError):
    """Ray enumeration requested above the configured dimension limit."""


class NotMemberError(MgnefError):
    """Face data requested for a point outside the cone."""


class ModelMismatchError(MgnefError):
    """Divisor and compactification model do not match, or the model
    has no pullback stored in the catalog."""


class CertificateFailure(MgnefError):
    """A certificate check failed.  Carries the violated check."""

    def __init__(self, check_name: str, detail: str = ""):
        self.check_name = check_name
        self.detail = detail
        msg = check_name if not detail else f"{check_name}: {detail}"
        super().__init__(msg)


class ParseError(MgnefError):
    """Malformed divisor expression.  Carries the character position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")
