"""Independent brute-force verifiers: sphere sampling and fitting,
finite-difference Jacobians, Newton inversion of theta, and conformality
checks.  Everything here is deliberately implementation-independent of the
operation it checks, sharing only basic vector arithmetic.

Randomness comes from numpy's PCG64 generator (``default_rng``): named,
seedable, and stable for a given platform and numpy build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import lie_gauge
from .correspondence import theta
from .errors import DomainError, NoConvergenceError, NotInteriorError, RankDeficientError
from .metric import DEFAULT_JACOBIAN_STEP, theta_jacobian
from .moebius import HyperbolicMotion, motion_apply
from .spheres import OrientedSphere, TangentVector, t_inv

# +90 degree rotation used for the ordered point pairs of 0-spheres (n = 2)
_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(eq=False)
class SampleSet:
    """Reproducible batch of points satisfying a generating constraint."""

    points: np.ndarray
    seed: int
    count: int


def sample_sphere(s: OrientedSphere, m: int, seed: int) -> SampleSet:
    """Sample m points uniformly on the (n-2)-sphere.

    Point-spheres return just the center.  For n = 2 the 0-sphere is the
    ordered pair (x + Jy, x - Jy), J the +90 degree rotation, and m is
    ignored.
    """
    if s.is_point:
        return SampleSet(s.center.reshape(1, -1).copy(), seed, 1)
    n = s.n
    if n == 2:
        jy = _J2 @ s.radius_vector
        pts = np.vstack([s.center + jy, s.center - jy])
        return SampleSet(pts, seed, 2)
    if m < n:
        raise DomainError("need at least n samples")
    # orthonormal basis of the hyperplane orthogonal to the radius vector
    _, _, vt = np.linalg.svd(s.radius_vector.reshape(1, n))
    basis = vt[1:]
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((m, n - 1))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    pts = s.center + s.radius * (dirs @ basis)
    return SampleSet(pts, seed, m)


def fit_sphere(points) -> tuple[OrientedSphere, float]:
    """Least-squares sphere through sampled points, orientation-free.

    Fits the affine hyperplane (smallest singular direction of the centered
    cloud) and the circumcenter/radius inside it.  The returned radius
    vector points along the fitted normal with arbitrary sign; the second
    element is the rms residual.
    """
    pts = points.points if isinstance(points, SampleSet) else np.asarray(points, float)
    m, n = pts.shape
    if n == 2:
        if m < 2:
            raise RankDeficientError("need the two points of the 0-sphere")
        p, q = pts[0], pts[-1]
        chord = q - p
        if np.linalg.norm(chord) == 0.0:
            raise RankDeficientError("coincident points")
        center = 0.5 * (p + q)
        normal = _J2 @ (chord / np.linalg.norm(chord))
        radius = 0.5 * float(np.linalg.norm(chord))
        return OrientedSphere(center, radius * normal), 0.0
    if m < n + 1:
        raise RankDeficientError("need at least n+1 points")
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    _, sing, vt = np.linalg.svd(centered, full_matrices=False)
    if sing[n - 2] <= 1e-10 * sing[0]:
        raise RankDeficientError("points do not span a hyperplane circle")
    normal = vt[n - 1]
    plane_basis = vt[: n - 1]
    coords = centered @ plane_basis.T
    # circumcenter: 2 (y_i - y_0) . c = |y_i|^2 - |y_0|^2
    a_mat = 2.0 * (coords[1:] - coords[0])
    b_vec = np.sum(coords[1:] ** 2, axis=1) - float(coords[0] @ coords[0])
    sol, _, rank, _ = np.linalg.lstsq(a_mat, b_vec, rcond=None)
    if rank < n - 1:
        raise RankDeficientError("degenerate circumcenter system")
    center = centroid + plane_basis.T @ sol
    dists = np.linalg.norm(pts - center, axis=1)
    radius = float(dists.mean())
    offsets = centered @ normal
    residual = float(np.sqrt(np.mean((dists - radius) ** 2) + np.mean(offsets**2)))
    return OrientedSphere(center, radius * normal), residual


def fd_jacobian(f, p, h: float = DEFAULT_JACOBIAN_STEP) -> np.ndarray:
    """Central-difference Jacobian of f at p: columns (f(p+h e_i)-f(p-h e_i))/2h."""
    p = np.asarray(p, dtype=float)
    cols = []
    for i in range(p.size):
        e = np.zeros_like(p)
        e[i] = h
        cols.append((np.asarray(f(p + e)) - np.asarray(f(p - e))) / (2.0 * h))
    return np.stack(cols, axis=-1)


def newton_theta_inv(
    z,
    guess: TangentVector,
    tol: float = 1e-11,
    max_iter: int = 100,
) -> TangentVector:
    """Invert theta by damped Newton iteration from a caller-supplied guess.

    Independent inverse used to cross-check the geometric construction.
    Steps are halved until the residual decreases (theta is a global
    diffeomorphism, so plain Newton almost always suffices; damping guards
    large fiber norms).  Raises NoConvergenceError with the best iterate
    after max_iter iterations.
    """
    z = np.asarray(z)
    from .core import BallRegion, classify  # local to avoid cycle at import time

    if classify(z).region is not BallRegion.INTERIOR:
        raise NotInteriorError("newton_theta_inv requires an interior point")
    n = z.size
    x = guess.x.copy()
    v = guess.v.copy()

    def residual(xc, vc):
        th = theta(TangentVector(xc, vc))
        return np.concatenate([(th - z).real, (th - z).imag])

    res = residual(x, v)
    best = (x.copy(), v.copy(), float(np.linalg.norm(res)))
    for _ in range(max_iter):
        norm = float(np.linalg.norm(res))
        if norm <= tol:
            return TangentVector(x, v)
        jac = theta_jacobian(TangentVector(x, v))
        step = np.linalg.solve(jac, -res)
        lam = 1.0
        while lam > 1e-8:
            x_try = x + lam * step[:n]
            v_try = v + lam * step[n:]
            if float(x_try @ x_try) < 1.0:
                res_try = residual(x_try, v_try)
                if float(np.linalg.norm(res_try)) < norm:
                    x, v, res = x_try, v_try, res_try
                    break
            lam *= 0.5
        else:
            break  # no descent: give up
        if float(np.linalg.norm(res)) < best[2]:
            best = (x.copy(), v.copy(), float(np.linalg.norm(res)))
    if float(np.linalg.norm(res)) <= tol:
        return TangentVector(x, v)
    raise NoConvergenceError(
        f"Newton stalled at residual {best[2]:.3e}",
        best=TangentVector(best[0], best[1]),
        residual=best[2],
    )


def conformality_check(motion: HyperbolicMotion, p, h: float = DEFAULT_JACOBIAN_STEP):
    """Finite-difference conformality test of a motion at an interior point.

    Returns (scale, deviation): the conformal factor |det J|^(1/n) and the
    max-norm of J^T J - scale^2 I.  Genuine motions come out conformal to
    finite-difference accuracy.
    """
    p = np.asarray(p, dtype=float)
    n = p.size
    jac = fd_jacobian(lambda q: motion_apply(motion, q), p, h=h)
    scale = abs(float(np.linalg.det(jac))) ** (1.0 / n)
    deviation = float(np.abs(jac.T @ jac - scale * scale * np.eye(n)).max())
    return scale, deviation


# --- seeded sampling helpers used by the verification suites and tests ---


def random_ball_point(n: int, rng, max_norm: float = 0.9) -> np.ndarray:
    """Random point of the open ball, radius scaled to at most max_norm."""
    d = rng.standard_normal(n)
    d /= np.linalg.norm(d)
    return max_norm * rng.random() ** (1.0 / n) * d


def random_tangent(n: int, rng, max_norm: float = 0.9, max_length: float = 3.0) -> TangentVector:
    """Random tangent vector with hyperbolic length at most max_length."""
    x = random_ball_point(n, rng, max_norm)
    u = rng.standard_normal(n)
    u /= np.linalg.norm(u)
    length = max_length * rng.random()
    return TangentVector(x, length * (1.0 - float(x @ x)) * u)


def random_orthogonal(n: int, rng, det_sign: int | None = None) -> np.ndarray:
    """Haar-ish random orthogonal matrix, optionally with prescribed det sign."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if det_sign is not None and np.sign(np.linalg.det(q)) != det_sign:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def random_motion(
    n: int,
    rng,
    parity: int | None = None,
    max_a: float = 0.7,
) -> HyperbolicMotion:
    """Random motion; ``parity`` prescribes the orientation of the full map."""
    det_sign = None if parity is None else parity * (-1) ** n
    rho = random_orthogonal(n, rng, det_sign)
    return HyperbolicMotion(rho, random_ball_point(n, rng, max_a))


def random_lie_point(n: int, rng, gauge: float) -> np.ndarray:
    """Random complex point rescaled to the requested gauge value (the gauge
    is homogeneous of degree two under real scaling)."""
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z * math.sqrt(gauge / lie_gauge(z))
