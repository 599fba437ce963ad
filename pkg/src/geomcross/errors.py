"""Exception types shared across the package."""


class GeomcrossError(Exception):
    """Base class for all package errors."""


class DegenerateInput(GeomcrossError):
    """Input configuration is degenerate (coincident/antipodal points, coincident lines, ...)."""


class OffCurve(GeomcrossError):
    """A point does not lie on the curve or geodesic it was claimed to lie on."""


class NoIntersection(GeomcrossError):
    """Two objects that were expected to meet do not meet on the model surface."""


class AtInfinity(GeomcrossError):
    """Central projection of this point misses the target plane (ray parallel to it)."""


class OnHorizon(GeomcrossError):
    """Spherical point orthogonal to the reference pole; no hemisphere representative."""


class IllConditioned(GeomcrossError):
    """A fitting problem has no unique solution at the working tolerance."""


class IdenticallyZero(GeomcrossError):
    """A curve vanishes identically along a geodesic; intersection is not a point set."""


class GenerationFailed(GeomcrossError):
    """Randomized scene generation exhausted its retry budget."""


class ParseError(GeomcrossError):
    """A scene document is not well formed."""


class ValidationError(GeomcrossError):
    """A scene document parsed but violates an invariant."""
