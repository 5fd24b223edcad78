"""Exception hierarchy for planequil.

Every failure the library reports deliberately derives from PlanequilError;
anything else escaping an operation is a bug.
"""

from __future__ import annotations


class PlanequilError(Exception):
    """Base class for all planequil errors."""


class NotConvex(PlanequilError):
    """The support function fails strong convexity (min rho <= tolerance)."""

    def __init__(self, phi: float, rho: float):
        self.phi = phi
        self.rho = rho
        super().__init__(
            f"support function is not strongly convex: "
            f"radius of curvature {rho:.6g} at angle {phi:.6g}"
        )


class OutOfRange(PlanequilError):
    """Angle argument outside the documented domain."""


class QuadratureDiverged(PlanequilError):
    """Doubling quadrature failed to reach the requested agreement."""


class DegenerateCircle(PlanequilError):
    """The (recentered) body is a disk about the origin: p' vanishes identically."""


class DegeneratePointEvolute(PlanequilError):
    """The evolute collapses to a single point coinciding with the center."""


class NotConverged(PlanequilError):
    """Counting quadrature did not settle on a (half-)integer at the sample cap."""

    def __init__(self, value: float, samples: int, residual: float):
        self.value = value
        self.samples = samples
        self.residual = residual
        super().__init__(
            f"quadrature value {value:.9g} has residual {residual:.3g} "
            f"at {samples} samples"
        )


class Mismatch(PlanequilError):
    """Direct equilibrium count disagrees with the winding-number formula."""

    def __init__(self, n_direct: int, n_formula: int):
        self.n_direct = n_direct
        self.n_formula = n_formula
        super().__init__(
            f"direct count {n_direct} != formula count {n_formula} "
            f"(numerical failure or center too close to the evolute)"
        )


class VertexAtCenter(PlanequilError):
    """A polyline vertex coincides with the winding center."""


class NonPeriodic(PlanequilError):
    """The inclined support primitive has no periodic radius of curvature."""


class ParseError(PlanequilError):
    """Body-spec input is not valid JSON."""


class SchemaError(PlanequilError):
    """Body-spec JSON violates the documented schema."""
