import math

import numpy as np
import pytest

from planequil import ConvexBody, TrigPolySupport, validate


@pytest.fixture(scope="session")
def oval() -> ConvexBody:
    """p = 3 + 0.3 cos(2 phi): four cusps, astroid-like evolute."""
    return validate(TrigPolySupport(3.0, (0.0, 0.3), (0.0, 0.0)))


@pytest.fixture(scope="session")
def cw_body() -> ConvexBody:
    """p = 2 + 0.1 cos(3 phi): constant width 4, doubly traversed evolute."""
    return validate(TrigPolySupport(2.0, (0.0, 0.0, 0.1), (0.0, 0.0, 0.0)))


@pytest.fixture(scope="session")
def offset_disk() -> ConvexBody:
    """p = 1 - 0.3 cos(phi): unit disk centered at (-0.3, 0)."""
    return validate(TrigPolySupport(1.0, (-0.3,), (0.0,)))


@pytest.fixture(scope="session")
def asym_fixture() -> ConvexBody:
    """Explicit asymmetric support with centroid at the origin."""
    return validate(TrigPolySupport(
        3.0,
        (36 / 857, 3 / 10, 1 / 5),
        (-279 / 8570, 3 / 10, 0.0),
    ))


def roly_support(c: float) -> TrigPolySupport:
    """One-parameter family that flattens toward a disk as c -> 0."""
    d = 9.0 - 43.0 * c * c
    return TrigPolySupport(
        3.0,
        (36.0 * c * c / d, 3.0 * c, 2.0 * c),
        (-9.0 * (4.0 - 9.0 * c) * c * c / d, 3.0 * c, 0.0),
    )


def random_support(rng: np.random.Generator, max_k: int = 6, min_k: int = 1,
                   margin: float = 0.7) -> TrigPolySupport:
    """Random support with rho > (1 - margin) a0 guaranteed by scaling.

    The curvature radius ignores first harmonics, so only k >= 2 terms are
    scaled; |rho - a0| <= sum (k^2 - 1) |coeff_k| <= margin * a0.  Bodies
    with min_k >= 2 are guaranteed non-circular (the evolute is a curve).
    """
    k_max = int(rng.integers(min_k, max_k + 1))
    a0 = float(rng.uniform(1.0, 3.0))
    cc = rng.normal(size=k_max)
    ss = rng.normal(size=k_max)
    amp = sum((k * k - 1) * math.hypot(cc[k - 1], ss[k - 1])
              for k in range(2, k_max + 1))
    if amp > margin * a0:
        f = margin * a0 / amp
        cc[1:] *= f
        ss[1:] *= f
    cap = 0.3 * a0
    cc[0] = max(-cap, min(cap, cc[0] * 0.3 * a0))
    ss[0] = max(-cap, min(cap, ss[0] * 0.3 * a0))
    return TrigPolySupport(a0, tuple(cc), tuple(ss))


def random_body(rng: np.random.Generator, **kwargs) -> ConvexBody:
    return validate(random_support(rng, **kwargs))
