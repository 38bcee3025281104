"""Complex quadratic form, Lie-ball gauge, and membership classification.

Conventions used throughout the package: Q(z) = sum z_i^2 with the bilinear
(non-conjugated) product, so Q extends the squared euclidean norm from real
to complex vectors.  The Lie ball in complex dimension n is

    { z in C^n : |z|^2 + sqrt(|z|^4 - |Q(z)|^2) < 1 }

with |z| the Hermitian norm.  For z = x + iy the gauge equals the squared
euclidean norm of the farthest point from the origin on the real
codimension-2 sphere with center x and radius vector y, which is why the
real unit ball sits on the ball's real slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InternalError

# default absolute tolerance for interior/boundary/exterior decisions
DEFAULT_TOL = 1e-9
# the gauge radicand is >= 0 in exact arithmetic; only FP noise may dip below
RADICAND_CLAMP = 1e-12


class BallRegion(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class BallClassification:
    """Region of the closed Lie ball a point falls in, plus its gauge value."""

    region: BallRegion
    gauge: float


def q_form(z):
    """Bilinear quadratic form Q(z) = sum z_i^2.

    Restricted to real vectors this is the squared euclidean norm.  Returns
    a Python float for real input and a complex number otherwise.
    """
    z = np.asarray(z)
    return np.sum(z * z).item()


def hermitian_norm_sq(z) -> float:
    """Hermitian squared norm sum |z_i|^2."""
    z = np.asarray(z)
    return float(np.sum(np.abs(z) ** 2))


def lie_gauge(z) -> float:
    """Gauge |z|^2 + sqrt(|z|^4 - |Q(z)|^2) of the Lie ball.

    The value is < 1 exactly for interior points.  For real z the radicand
    vanishes identically and the gauge is the squared euclidean norm.
    """
    z = np.asarray(z)
    h = float(np.sum(np.abs(z) ** 2))
    q = np.sum(z * z).item()
    mod_q_sq = q.real * q.real + q.imag * q.imag
    radicand = h * h - mod_q_sq
    if radicand < 0.0:
        # Cauchy-Schwarz guarantees radicand >= 0; anything materially below
        # zero means the caller fed garbage (nan/inf already propagated).
        if radicand < -RADICAND_CLAMP * max(1.0, h * h):
            raise InternalError(
                f"gauge radicand {radicand} is negative beyond rounding noise"
            )
        radicand = 0.0
    return h + math.sqrt(radicand)


def classify(z, tol: float = DEFAULT_TOL) -> BallClassification:
    """Classify z against the closed Lie ball using the gauge.

    interior: gauge < 1 - tol, boundary: |gauge - 1| <= tol, else exterior.
    """
    g = lie_gauge(z)
    if g < 1.0 - tol:
        region = BallRegion.INTERIOR
    elif abs(g - 1.0) <= tol:
        region = BallRegion.BOUNDARY
    else:
        region = BallRegion.EXTERIOR
    return BallClassification(region, g)
