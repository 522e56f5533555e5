"""Exception hierarchy.

Every domain failure derives from :class:`SuperGeometryError`, so the CLI can
map the whole family to exit code 1 while parse problems map to 2.
"""


class SuperGeometryError(ValueError):
    """Base class for all domain errors raised by this package."""


class ContextMismatch(SuperGeometryError):
    pass


class NonInvertible(SuperGeometryError):
    pass


class DomainError(SuperGeometryError):
    pass


class ExactModeUnsupported(SuperGeometryError):
    pass


class ParityError(SuperGeometryError):
    pass


class GradingError(SuperGeometryError):
    pass


class DeterminantNotOne(SuperGeometryError):
    pass


class OspInvariantError(SuperGeometryError):
    pass


class ShapeError(SuperGeometryError):
    pass


class NotOnIH(SuperGeometryError):
    pass


class NotLightlike(SuperGeometryError):
    pass


class ScaleMismatch(SuperGeometryError):
    pass


class CoincidentBodies(SuperGeometryError):
    pass


class PointOnLine(SuperGeometryError):
    pass


class InvalidGeodesic(SuperGeometryError):
    pass


class DegenerateTriangle(SuperGeometryError):
    pass


class SamplerExhausted(SuperGeometryError):
    pass


class NonGeneric(SuperGeometryError):
    pass


class DegenerateFrame(SuperGeometryError):
    pass


class ResidualTooLarge(SuperGeometryError):
    pass


class IllConditioned(SuperGeometryError):
    pass


class ConditionResidualAmbiguous(SuperGeometryError):
    pass


class NotIntersecting(SuperGeometryError):
    pass


class NotParallel(SuperGeometryError):
    pass


class UltraparallelNoPerpendicular(SuperGeometryError):
    pass


class ParseError(ValueError):
    """Malformed textual or JSON input; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
