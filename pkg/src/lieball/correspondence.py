"""The equivariant correspondence between the tangent bundle of the Poincare
ball and the Lie ball.

``theta`` sends a tangent vector (x, v) to the complex point encoding the
oriented sphere with hyperbolic center x, hyperbolic radius |v|/(1 - |x|^2),
contained in the hyperbolic hyperplane through x orthogonal to v:

    theta(x, v) = delta_x(z'),   z' = -i (v/|v|) tanh(|v| / (1 - |x|^2)),

with theta(x, 0) = x on the zero section.  It is a diffeomorphism onto the
open Lie ball; ``theta_inv`` recovers the tangent vector from the sphere
geometry (in-plane antipodes and their hyperbolic midpoint), then polishes
the closed-form result with a couple of Newton steps on the forward map to
pin the round trip at machine accuracy.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DEFAULT_TOL, BallRegion, classify
from .errors import (
    ConstructionMismatchError,
    DomainError,
    NotBoundaryError,
    NotInteriorError,
)
from .metric import theta_jacobian
from .moebius import delta_apply, hyp_midpoint
from .spheres import OrientedSphere, TangentVector, t_inv, t_map

# residual of the closed-form construction before polishing; the construction
# is exact, so anything past conditioning noise signals an implementation bug
_CONSTRUCTION_TOL = 1e-5
_POLISH_TARGET = 1e-13
_POLISH_STEPS = 3


def theta(tv: TangentVector) -> np.ndarray:
    """Complex Lie-ball point of a tangent vector; the zero section maps to
    the real slice unchanged."""
    x, v = tv.x, tv.v
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        return x.astype(complex)
    length = nv / (1.0 - float(x @ x))
    zp = (-1j * math.tanh(length) / nv) * v
    return delta_apply(x, zp)


def _unit_orthogonal_to(yhat: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to the unit vector yhat."""
    k = int(np.argmin(np.abs(yhat)))
    e = np.zeros_like(yhat)
    e[k] = 1.0
    w = e - float(e @ yhat) * yhat
    return w / np.linalg.norm(w)


def theta_inv(z, tol: float = DEFAULT_TOL, polish: bool = True) -> TangentVector:
    """Unique tangent vector with theta(tv) = z, for z interior to the Lie ball.

    Geometry of the construction: the symmetry plane spanned by the sphere's
    euclidean center and radius vector meets the sphere in two antipodes;
    their hyperbolic midpoint is the hyperbolic center x, and peeling the
    involution delta_x off z leaves the purely imaginary z' whose direction
    and radius give v.  If Re(delta_x(z)) fails to vanish the construction
    is inconsistent and ConstructionMismatchError is raised.
    """
    z = np.asarray(z)
    if classify(z, tol).region is not BallRegion.INTERIOR:
        raise NotInteriorError("theta_inv requires an interior Lie-ball point")
    x_e = np.real(z).astype(float)
    y = np.imag(z).astype(float)
    ny = float(np.linalg.norm(y))
    if ny == 0.0:
        return TangentVector(x_e, np.zeros_like(x_e))
    yhat = y / ny
    w = x_e - float(x_e @ yhat) * yhat
    w -= float(w @ yhat) * yhat  # reorthogonalize against rounding
    nw = float(np.linalg.norm(w))
    if nw > 1e-12 * (1.0 + np.linalg.norm(x_e)):
        what = w / nw
    else:
        # center parallel to the radius vector: every in-plane choice works
        what = _unit_orthogonal_to(yhat)
    x = hyp_midpoint(x_e - ny * what, x_e + ny * what)
    zp = delta_apply(x, z)
    re_norm = float(np.linalg.norm(zp.real))
    if re_norm > _CONSTRUCTION_TOL * (1.0 + float(np.linalg.norm(z))):
        raise ConstructionMismatchError(
            f"real part of delta_x(z) is {re_norm:.3e}, construction inconsistent"
        )
    im = zp.imag
    nim = float(np.linalg.norm(im))
    if nim == 0.0:
        v = np.zeros_like(x_e)
    else:
        radius = math.atanh(min(nim, np.nextafter(1.0, 0.0)))
        v = (-(1.0 - float(x @ x)) * radius / nim) * im
    if polish:
        x, v = _polish(x, v, z)
    return TangentVector(x, v)


def _polish(x, v, z):
    """Few Newton steps on theta(x, v) = z with the exact Jacobian.

    The closed-form construction is already correct to its conditioning; the
    polish removes the floating-point amplification near large hyperbolic
    radii where the antipodes hug the boundary.
    """
    n = x.size
    target = _POLISH_TARGET * (1.0 + float(np.linalg.norm(z)))
    for _ in range(_POLISH_STEPS):
        th = theta(TangentVector(x, v))
        res = np.concatenate([(th - z).real, (th - z).imag])
        if float(np.linalg.norm(res)) <= target:
            break
        jac = theta_jacobian(TangentVector(x, v))
        step = np.linalg.solve(jac, -res)
        x_new = x + step[:n]
        v_new = v + step[n:]
        if float(x_new @ x_new) >= 1.0:
            break  # never leave the chart; keep the unpolished values
        x, v = x_new, v_new
    return x, v


def s_map(tv: TangentVector) -> OrientedSphere:
    """Oriented sphere with hyperbolic center tv.x, hyperbolic radius
    |v|/(1-|x|^2), orthogonal to v (point-sphere for v = 0)."""
    return t_map(theta(tv))


def s_inv(s: OrientedSphere, tol: float = DEFAULT_TOL) -> TangentVector:
    """Tangent vector of an oriented sphere strictly inside the unit ball."""
    return theta_inv(t_inv(s), tol=tol)


def boundary_tangency(z, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Tangency point with the unit sphere for a boundary Lie-ball point.

    The sphere encoded by a boundary point touches the unit sphere at the
    point of the sphere farthest from the origin: x plus the in-plane
    rotation of the radius vector toward the center direction.
    """
    z = np.asarray(z)
    if classify(z, tol).region is not BallRegion.BOUNDARY:
        raise NotBoundaryError("boundary_tangency requires a boundary point")
    x = np.real(z).astype(float)
    y = np.imag(z).astype(float)
    ny = float(np.linalg.norm(y))
    if ny == 0.0:
        return x  # point-sphere on the unit sphere
    yhat = y / ny
    w = x - float(x @ yhat) * yhat
    nw = float(np.linalg.norm(w))
    if nw > 1e-12 * (1.0 + np.linalg.norm(x)):
        uhat = w / nw
    else:
        # center on the radius-vector axis: all touching directions tie
        uhat = _unit_orthogonal_to(yhat)
    return x + ny * uhat
