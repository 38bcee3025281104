"""Oriented codimension-2 spheres, tangent vectors, and their parametrizations.

An oriented (n-2)-sphere is stored as a euclidean center x plus a radius
vector y: the sphere is the set of real points at distance |y| from x inside
the hyperplane through x orthogonal to y, i.e. exactly {a : Q((x+iy)-a) = 0}.
The complex point z = x + iy is therefore an equivalent encoding; converting
between the two is the job of ``t_map`` and ``t_inv``.  A zero radius vector
encodes the degenerate point-sphere {x}.

For n = 2 a 0-sphere is an ordered point pair; with R^2 identified with C the
pair is (z1 + i z2, conj(z1) + i conj(z2)), i.e. x + Jy and x - Jy where J is
the rotation by +90 degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOL, hermitian_norm_sq, q_form
from .errors import DomainError


def _as_real_vector(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise DomainError(f"{name} must be a real vector of dimension >= 2")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must have finite entries")
    return arr


@dataclass(eq=False)
class OrientedSphere:
    """Oriented (n-2)-sphere: euclidean center plus radius vector.

    The radius vector is orthogonal to the hyperplane containing the sphere
    and its length is the euclidean radius; its sign carries the orientation.
    """

    center: np.ndarray
    radius_vector: np.ndarray

    def __post_init__(self):
        self.center = _as_real_vector(self.center, "center")
        self.radius_vector = _as_real_vector(self.radius_vector, "radius_vector")
        if self.center.shape != self.radius_vector.shape:
            raise DomainError("center and radius_vector must have equal dimension")

    @property
    def n(self) -> int:
        return self.center.size

    @property
    def radius(self) -> float:
        return float(np.linalg.norm(self.radius_vector))

    @property
    def is_point(self) -> bool:
        return bool(np.all(self.radius_vector == 0.0))


@dataclass(eq=False)
class TangentVector:
    """Tangent vector to the Poincare ball: base point x (|x| < 1) and chart
    components v.  The hyperbolic length of v is |v| / (1 - |x|^2)."""

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.x = _as_real_vector(self.x, "x")
        self.v = _as_real_vector(self.v, "v")
        if self.x.shape != self.v.shape:
            raise DomainError("x and v must have equal dimension")
        if float(self.x @ self.x) >= 1.0:
            raise DomainError("base point must lie strictly inside the unit ball")

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def hyperbolic_length(self) -> float:
        return float(np.linalg.norm(self.v) / (1.0 - self.x @ self.x))


def t_map(z) -> OrientedSphere:
    """Oriented sphere encoded by the complex point z = x + iy."""
    z = np.asarray(z)
    return OrientedSphere(np.real(z).astype(float), np.imag(z).astype(float))


def t_inv(s: OrientedSphere) -> np.ndarray:
    """Complex point x + iy encoding the oriented sphere; exact inverse of t_map."""
    return s.center + 1j * s.radius_vector


def sphere_contains_point(z, a, tol: float = DEFAULT_TOL) -> bool:
    """Whether the real point a lies on the sphere encoded by z.

    Membership is the isotropy condition Q(z - a) = 0, tested with a scaled
    absolute tolerance.
    """
    z = np.asarray(z)
    a = np.asarray(a, dtype=float)
    q = q_form(z - a)
    scale = 1.0 + hermitian_norm_sq(z) + float(a @ a)
    return abs(q) <= tol * scale


def sphere_hyp_to_euc(c, r: float):
    """Euclidean center and radius of the hyperbolic sphere S(c, r).

    Parameters
    ----------
    c : real vector, |c| < 1
        Hyperbolic center.
    r : positive float
        Radius parameter; the euclidean radius of the image of the sphere
        under the involution moving c to the origin is tanh(r / (1 - |c|^2)).

    Returns
    -------
    (c_e, r_e) : euclidean center (parallel to c) and euclidean radius.
    """
    c = _as_real_vector(c, "c")
    nc2 = float(c @ c)
    if nc2 >= 1.0:
        raise DomainError("hyperbolic center must lie strictly inside the unit ball")
    if not (r > 0.0 and math.isfinite(r)):
        raise DomainError("radius must be a positive finite real")
    alpha = math.tanh(r / (1.0 - nc2))
    den = 1.0 - nc2 * alpha * alpha
    c_e = (1.0 - alpha * alpha) * c / den
    r_e = (1.0 - nc2) * alpha / den
    return c_e, r_e


def sphere_euc_to_hyp(c_e, r_e: float):
    """Hyperbolic center and radius from euclidean sphere data; inverse of
    ``sphere_hyp_to_euc``.

    Works along the diameter through the origin: the euclidean endpoints
    |c_e| +- r_e sit at hyperbolic distances artanh(|c_e| +- r_e) from the
    origin, and the hyperbolic center splits that pair evenly.
    """
    c_e = _as_real_vector(c_e, "c_e")
    u = float(np.linalg.norm(c_e))
    if not (r_e > 0.0 and math.isfinite(r_e)):
        raise DomainError("euclidean radius must be a positive finite real")
    p_plus = u + r_e
    p_minus = u - r_e
    if p_plus >= 1.0:
        raise DomainError("sphere must be contained in the open unit ball")
    tp = math.atanh(p_plus)
    tm = math.atanh(p_minus)
    t = math.tanh(0.5 * (tp + tm))
    alpha = math.tanh(0.5 * (tp - tm))
    r = (1.0 - t * t) * math.atanh(alpha)
    if u == 0.0:
        c = np.zeros_like(c_e)
    else:
        c = (t / u) * c_e
    return c, r
