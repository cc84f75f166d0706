"""Exceptions raised by torus_thurston.

Everything derives from :class:`DomainError` (itself a ``ValueError``) so the
CLI can map any of them to its domain-error exit code.
"""


class DomainError(ValueError):
    pass


class NotInHalfPlane(DomainError):
    pass


class CoincidentPoints(DomainError):
    pass


class PointNotOnGeodesic(DomainError):
    pass


class NonpositiveScale(DomainError):
    pass


class InvalidParameter(DomainError):
    pass


class DiscontinuousPath(DomainError):
    pass


class InfiniteSlopeUnsupported(DomainError):
    pass


class DegenerateParabola(DomainError):
    pass


class RootNotBracketed(DomainError):
    pass
