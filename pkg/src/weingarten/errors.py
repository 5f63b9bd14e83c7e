"""Exception hierarchy shared by all modules."""


class WeingartenError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(WeingartenError, ValueError):
    """Invalid or unsupported configuration."""


class DomainError(WeingartenError, ValueError):
    """A point or parameter lies outside the domain of a formula."""


class BoundaryError(DomainError):
    """The radial coordinate reached the edge of the coordinate model."""


class ParseError(WeingartenError, ValueError):
    """Malformed expression text.

    Parameters
    ----------
    message : str
        Human readable description.
    offset : int
        Byte offset into the source where the problem was detected.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(ParseError):
    """An identifier that is neither an allowed variable nor a function."""


class EvalError(WeingartenError, ArithmeticError):
    """Numerical evaluation failed (domain violation, overflow, ...)."""


class EllipticityError(WeingartenError):
    """The Weingarten relation is not elliptic on the checked grid."""


class NoFixedPoint(WeingartenError):
    """No umbilic constant exists for the given class."""


class NoRoot(WeingartenError):
    """No second derivative satisfies the Weingarten relation."""


class SingularAxis(DomainError):
    """Curvature formula evaluated too close to the rotation axis."""


class MaxSExceeded(WeingartenError):
    """Integration reached ``max_s`` without any terminal event.

    The partially integrated example is kept in ``partial``.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ConstructionError(WeingartenError):
    """A requested auxiliary construction cannot be carried out."""


class TangencyError(DomainError):
    """Vector is not tangent to the unit sphere at the given point."""


class PoleError(DomainError):
    """Stereographic projection evaluated at the projection pole."""


class NonConvergent(WeingartenError):
    """An extrapolated limit does not appear to exist."""
