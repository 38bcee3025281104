"""Inversions and hyperbolic motions of the Poincare ball, their holomorphic
continuation to complex points, exact differentials, and the induced actions
on tangent vectors and oriented spheres.

Every motion is stored in the normal form gamma = rho o delta_a where rho is
a euclidean orthogonal map and delta_a is the rational involution swapping
the ball point a with the origin,

    delta_a(x) = [ (|a|^2 - 1) x + (1 + Q(x)) a - 2 (x.a) a ]
                 / ( Q(x) |a|^2 - 2 (x.a) + 1 ).

With a = 0 the formula degenerates to -identity, so the identity motion has
normal form (rho = -I, a = 0).  The same formula evaluated with bilinear
products continues the motion holomorphically to the Lie ball; its only
poles lie on the isotropic cone of a* = a/|a|^2, which stays outside the
closed ball, so continuation is defined wherever we need it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import q_form
from .errors import (
    DomainError,
    InternalError,
    IsotropicConeError,
    SingularDenominatorError,
)
from .spheres import OrientedSphere, TangentVector, t_inv, t_map

# |rho^T rho - I| accepted when validating / rebuilding normal forms
ORTHOGONALITY_TOL = 1e-12


def _real_ball_point(a, name: str = "a") -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or not np.all(np.isfinite(a)):
        raise DomainError(f"{name} must be a finite real vector")
    if float(a @ a) >= 1.0:
        raise DomainError(f"{name} must lie strictly inside the unit ball")
    return a


@dataclass(eq=False)
class Inversion:
    """Inversion through the sphere of center ``center`` and radius ``radius``:
    x -> center + radius^2 (x - center) / |x - center|^2."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float)
        if self.center.ndim != 1 or not np.all(np.isfinite(self.center)):
            raise DomainError("inversion center must be a finite real vector")
        self.radius = float(self.radius)
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError("inversion radius must be positive")


def inversion_apply(inv: Inversion, z, tol: float = 1e-12):
    """Apply an inversion, holomorphically continued via Q in the denominator.

    Real inputs give the classical real inversion; the map is involutive on
    its domain.  Raises IsotropicConeError when Q(z - center) vanishes, i.e.
    when the inversion center lies on the sphere encoded by z.
    """
    z = np.asarray(z)
    d = z - inv.center
    qd = np.sum(d * d).item()
    if abs(qd) <= tol * (1.0 + float(np.sum(np.abs(d) ** 2))):
        raise IsotropicConeError("input lies on the isotropic cone of the center")
    return inv.center + (inv.radius**2) * d / qd


def delta_apply(a, z, tol: float = 1e-14):
    """The involution delta_a exchanging a and the origin, applied to z.

    Accepts real or complex z (same formula, bilinear products); real input
    inside the ball returns a real point inside the ball.
    """
    a = _real_ball_point(a)
    z = np.asarray(z)
    na2 = float(a @ a)
    qz = np.sum(z * z).item()
    za = np.sum(z * a).item()
    den = qz * na2 - 2.0 * za + 1.0
    scale = 1.0 + abs(qz) * na2 + 2.0 * abs(za)
    if abs(den) <= tol * scale:
        raise SingularDenominatorError(
            "delta denominator vanished; a* lies on the sphere of z"
        )
    return ((na2 - 1.0) * z + (1.0 + qz) * a - 2.0 * za * a) / den


def delta_differential(a, z):
    """Jacobian matrix of z -> delta_a(z); complex-linear for complex z."""
    a = np.asarray(a, dtype=float)
    z = np.asarray(z)
    n = a.size
    na2 = float(a @ a)
    qz = np.sum(z * z).item()
    za = np.sum(z * a).item()
    den = qz * na2 - 2.0 * za + 1.0
    num = (na2 - 1.0) * z + (1.0 + qz) * a - 2.0 * za * a
    eye = np.eye(n)
    m = ((na2 - 1.0) * eye + 2.0 * np.outer(a, z) - 2.0 * np.outer(a, a)) / den
    m -= (2.0 / den**2) * np.outer(num, na2 * z - a)
    return m


def delta_param_differential(a, z):
    """Derivative of delta_a(z) with respect to the parameter a (z held fixed)."""
    a = np.asarray(a, dtype=float)
    z = np.asarray(z)
    n = a.size
    na2 = float(a @ a)
    qz = np.sum(z * z).item()
    za = np.sum(z * a).item()
    den = qz * na2 - 2.0 * za + 1.0
    num = (na2 - 1.0) * z + (1.0 + qz) * a - 2.0 * za * a
    eye = np.eye(n)
    d_num = 2.0 * np.outer(z, a) + (1.0 + qz) * eye - 2.0 * np.outer(a, z) - 2.0 * za * eye
    d_den = 2.0 * qz * a - 2.0 * z
    return d_num / den - np.outer(num, d_den) / den**2


def delta_second_differential(a, p, w):
    """Second derivative of delta_a at p contracted with w.

    Returns the matrix H with H[:, j] = d^2 delta_a(p)[e_j, w]; used to
    differentiate tangent-bundle maps (p, u) -> (delta_a(p), d delta_a(p) u).
    """
    a = np.asarray(a, dtype=float)
    p = np.asarray(p)
    w = np.asarray(w)
    n = a.size
    na2 = float(a @ a)
    qp = np.sum(p * p).item()
    pa = np.sum(p * a).item()
    den = qp * na2 - 2.0 * pa + 1.0
    num = (na2 - 1.0) * p + (1.0 + qp) * a - 2.0 * pa * a
    eye = np.eye(n)
    d_num = (na2 - 1.0) * eye + 2.0 * np.outer(a, p) - 2.0 * np.outer(a, a)
    d_den = 2.0 * (na2 * p - a)
    dden_w = np.sum(d_den * w).item()
    h = (2.0 / den) * np.outer(a, w)
    h -= (dden_w / den**2) * d_num
    h -= np.outer(d_num @ w, d_den) / den**2
    h -= (2.0 * na2 / den**2) * np.outer(num, w)
    h += (2.0 * dden_w / den**3) * np.outer(num, d_den)
    return h


@dataclass(eq=False)
class HyperbolicMotion:
    """Isometry of the Poincare ball in normal form (rho, a): x -> rho(delta_a(x)).

    ``parity`` caches the determinant sign of rho alone; the orientation
    character of the full motion is ``motion_parity`` (an extra factor
    (-1)^n comes from delta_a, which is conjugate to -identity).
    """

    rho: np.ndarray
    a: np.ndarray
    parity: int = 0  # filled in __post_init__

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=float)
        self.a = _real_ball_point(self.a)
        n = self.a.size
        if self.rho.shape != (n, n):
            raise DomainError("orthogonal part must be an n x n matrix")
        defect = np.abs(self.rho.T @ self.rho - np.eye(n)).max()
        if not defect <= ORTHOGONALITY_TOL:
            raise DomainError(
                f"orthogonal part fails rho^T rho = I by {defect:.3e}"
            )
        det = float(np.linalg.det(self.rho))
        self.parity = 1 if det > 0 else -1

    @property
    def n(self) -> int:
        return self.a.size

    @classmethod
    def identity(cls, n: int) -> "HyperbolicMotion":
        # delta_0 = -id, so the identity needs rho = -I
        return cls(-np.eye(n), np.zeros(n))

    @classmethod
    def from_delta(cls, a) -> "HyperbolicMotion":
        """The motion x -> delta_a(x) itself (rho = I)."""
        a = np.asarray(a, dtype=float)
        return cls(np.eye(a.size), a)

    def to_dict(self) -> dict:
        return {
            "orthogonal_part": [float(t) for t in self.rho.reshape(-1)],
            "a": [float(t) for t in self.a],
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HyperbolicMotion":
        n = int(data["n"])
        rho = np.asarray(data["orthogonal_part"], dtype=float).reshape(n, n)
        return cls(rho, np.asarray(data["a"], dtype=float))


def motion_apply(motion: HyperbolicMotion, z):
    """Apply the motion to a real or complex point (holomorphic continuation)."""
    return motion.rho @ delta_apply(motion.a, z)


def motion_parity(motion: HyperbolicMotion) -> int:
    """Sign of det(d gamma): +1 for orientation preserving motions.

    The differential of delta_a has determinant sign (-1)^n everywhere, so
    the full motion carries parity(rho) * (-1)^n, constant over the ball.
    """
    return motion.parity * (-1) ** motion.n


def motion_differential(motion: HyperbolicMotion, z):
    """Exact Jacobian of the motion at z (chain rule through rho and delta_a)."""
    return motion.rho @ delta_differential(motion.a, z)


def motion_second_differential(motion: HyperbolicMotion, p, w):
    """Second derivative of the motion at p contracted with w."""
    return motion.rho @ delta_second_differential(motion.a, p, w)


def motion_compose(first: HyperbolicMotion, second: HyperbolicMotion) -> HyperbolicMotion:
    """Normal form of x -> first(second(x)).

    The translation parameter is (first o second)^{-1}(0); the orthogonal
    part is recovered as the exact differential at the origin of the
    composition followed by delta_a, then re-orthonormalized.
    """
    if first.n != second.n:
        raise DomainError("motions must act on the same dimension")
    # gamma^{-1} = delta_a o rho^T, so (g1 o g2)^{-1}(0) = g2^{-1}(a1)
    a = delta_apply(second.a, second.rho.T @ first.a)
    d0 = delta_differential(a, np.zeros(first.n))
    p1 = delta_apply(a, np.zeros(first.n))  # = a
    d2 = motion_differential(second, p1)
    p2 = motion_apply(second, p1)
    d1 = motion_differential(first, p2)
    rho = d1 @ d2 @ d0
    u, sing, vt = np.linalg.svd(rho)
    if np.abs(sing - 1.0).max() > 1e-9:
        raise InternalError("recovered orthogonal part is far from orthogonal")
    return HyperbolicMotion(u @ vt, a)


def motion_inverse(motion: HyperbolicMotion) -> HyperbolicMotion:
    """Normal form of the inverse motion: (rho^T, rho a)."""
    return HyperbolicMotion(motion.rho.T, motion.rho @ motion.a)


def tangent_action(motion: HyperbolicMotion, tv: TangentVector) -> TangentVector:
    """Action of a motion on a tangent vector, including the orientation sign.

    Maps (x, v) to (gamma(x), eps * d gamma(x) v) with eps = motion_parity.
    Under this action the tangent-vector parametrization of oriented spheres
    is strictly equivariant.
    """
    eps = motion_parity(motion)
    x_new = motion_apply(motion, tv.x)
    v_new = eps * (motion_differential(motion, tv.x) @ tv.v)
    return TangentVector(x_new, v_new)


def motion_apply_sphere(motion: HyperbolicMotion, s: OrientedSphere) -> OrientedSphere:
    """Image of an oriented sphere under a motion.

    Setwise this is the sphere encoded by the holomorphic continuation
    applied to t_inv(s).  That representative already carries the radius
    vector Y singled out by the positivity rule Y . d gamma(p)(y) > 0 at
    sphere points p, for both orientation classes, so no further orientation
    fix-up is applied.
    """
    w = motion_apply(motion, t_inv(s))
    return t_map(w)


def hyp_distance(p, q) -> float:
    """Hyperbolic distance in the ds/(1-|x|^2) convention: d(0, x) = artanh |x|.

    Computed as artanh |delta_p(q)|, i.e. by moving p to the origin with the
    involution and reading off the radial distance.
    """
    p = _real_ball_point(p, "p")
    q = _real_ball_point(q, "q")
    if np.array_equal(p, q):
        return 0.0
    u = delta_apply(p, q)
    nu = float(np.linalg.norm(u))
    # valid inputs keep nu < 1; clip one ulp of slack from rounding
    return math.atanh(min(nu, np.nextafter(1.0, 0.0)))


def hyp_midpoint(p, q):
    """Point m on the geodesic from p to q with d(p, m) = d(m, q).

    Uses the Klein-model (Einstein) midpoint: gamma-weighted euclidean mean
    of the Klein images, which is rational in p and q and keeps full
    precision even when the endpoints hug the boundary.
    """
    p = _real_ball_point(p, "p")
    q = _real_ball_point(q, "q")
    sp = 1.0 - float(p @ p)
    sq = 1.0 - float(q @ q)
    num = 2.0 * p / sp + 2.0 * q / sq
    den = (1.0 + float(p @ p)) / sp + (1.0 + float(q @ q)) / sq
    klein = num / den
    return klein / (1.0 + math.sqrt(max(1.0 - float(klein @ klein), 0.0)))
