"""Cross-ratio invariants and conic incidence theorems on constant-curvature surfaces."""

from .curves import Conic, DegreeNCurve, conic_through_five, curve_residual, intersect_curve_geodesic
from .errors import (
    AtInfinity,
    DegenerateInput,
    GenerationFailed,
    GeomcrossError,
    IdenticallyZero,
    IllConditioned,
    NoIntersection,
    OffCurve,
    OnHorizon,
    ParseError,
    ValidationError,
)
from .forms import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    Geometry,
    bilinear_form,
    distance,
    geometry_from_name,
    gsin,
    lift_to_surface,
    renormalize,
)
from .incidence import (
    OrientedGeodesic,
    Pencil,
    antipode,
    arc_position,
    cross_ratio_pencil,
    cross_ratio_points,
    cross_ratio_positions,
    geodesic_through,
    line_meet,
    perspectivity,
)
from .projection import (
    PlanarCurve,
    ProjectionPlane,
    hemisphere_normalize,
    klein_coordinates,
    project_point,
    pushforward_curve,
)
from .scenes import Assertion, Scene, check_scene
from .suites import SuiteReport, run_suite, write_report_csv
from .theorems import (
    CevianSextuple,
    Triangle,
    butterfly_defect,
    carnot_cross_ratio_product,
    carnot_n_product,
    carnot_product,
    chasles_deviation,
    menelaus_product,
    transversal_points,
)

__version__ = "0.1.0"
