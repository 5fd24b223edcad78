"""planequil: equilibrium structure of planar strongly convex bodies.

Bodies are trigonometric-polynomial support functions; the library computes
boundary geometry, evolutes with classified cusps, generalized winding
numbers and horizontal/oblique equilibria, verifying the counting identity
n = 2 - 2m by two independent routes.
"""

from ._backend import BACKEND_NAME
from .body import (ConvexBody, PlanePoint, PlaneVector, TrigPolySupport,
                   arc_length, area, boundary_centroid, boundary_point,
                   centroid, constant_width, eval_support, recenter, validate)
from .equilibria import (Equilibrium, RegionMap, Stability,
                         count_consistency, find_horizontal_equilibria,
                         neighbour_average_check, region_map)
from .errors import (DegenerateCircle, DegeneratePointEvolute, Mismatch,
                     NonPeriodic, NotConverged, NotConvex, OutOfRange,
                     ParseError, PlanequilError, QuadratureDiverged,
                     SchemaError, VertexAtCenter)
from .evolute import (Cusp, CuspKind, EvolutePolyline, alternating_arc_sum,
                      distance_to_evolute, evolute_point, find_cusps,
                      sample_evolute)
from .oblique import (Incline, ObliqueBody, ObliqueEquilibrium,
                      ObliqueStability, build_oblique_body, center_trace,
                      find_oblique_equilibria, oblique_count_via_formula,
                      perturbed_evolute_point)
from .winding import (HalfInteger, QuadratureReport, evolute_winding,
                      polygonal_winding, zero_count_integral)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "ConvexBody", "PlanePoint", "PlaneVector", "TrigPolySupport",
    "arc_length", "area", "boundary_centroid", "boundary_point", "centroid",
    "constant_width", "eval_support", "recenter", "validate",
    "Equilibrium", "RegionMap", "Stability", "count_consistency",
    "find_horizontal_equilibria", "neighbour_average_check", "region_map",
    "Cusp", "CuspKind", "EvolutePolyline", "alternating_arc_sum",
    "distance_to_evolute", "evolute_point", "find_cusps", "sample_evolute",
    "Incline", "ObliqueBody", "ObliqueEquilibrium", "ObliqueStability",
    "build_oblique_body", "center_trace", "find_oblique_equilibria",
    "oblique_count_via_formula", "perturbed_evolute_point",
    "HalfInteger", "QuadratureReport", "evolute_winding",
    "polygonal_winding", "zero_count_integral",
    "PlanequilError", "NotConvex", "OutOfRange", "QuadratureDiverged",
    "DegenerateCircle", "DegeneratePointEvolute", "NotConverged", "Mismatch",
    "VertexAtCenter", "NonPeriodic", "ParseError", "SchemaError",
    "__version__",
]
