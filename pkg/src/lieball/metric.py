"""Pulled-back metric on the tangent bundle of the Poincare ball.

The bundle map theta sends a tangent vector (x, v) to a Lie-ball point; the
invariant metric of the Lie ball, normalized so that the tensor at the zero
vector over the origin is the identity, pulls back to a Kahler-type metric
on the bundle.  At the origin the tensor is block diagonal with

    B1 = cosh^4 |v| * A1^2,   A1 = sech^2|v| I + 2 tanh^2|v| u u^T,
    B2 = cosh^4 |v| * A2^2,   A2 = (tanh|v|/|v|)(I - u u^T) + sech^2|v| u u^T,

u = v/|v|.  Elsewhere the tensor is transported with the exact differential
of the bundle involution (x, v) -> (0, v / (|x|^2 - 1)).

Christoffel symbols are produced by central finite differences of the
tensor, and geodesics integrated with the classical fourth-order scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IllConditionedError, StepOutError
from .moebius import delta_differential, delta_param_differential
from .spheres import TangentVector

# finite-difference steps: sqrt/cbrt of double eps scaled to unit quantities
DEFAULT_METRIC_STEP = 1e-5
DEFAULT_JACOBIAN_STEP = 1e-6
# below this |v| the closed v -> 0 limits replace the u-dependent formulas
_SMALL_V = 1e-12


@dataclass(eq=False)
class MetricTensor:
    """Metric at a point of the tangent bundle, as a symmetric positive
    definite 2n x 2n matrix in (base, fiber) coordinates."""

    point: TangentVector
    matrix: np.ndarray


@dataclass(eq=False)
class GeodesicPath:
    """Sampled geodesic: list of (point, velocity) pairs at uniform parameter
    steps. Velocities are 2n-vectors (base then fiber components)."""

    samples: list
    step: float


def theta_jacobian(tv: TangentVector) -> np.ndarray:
    """Real 2n x 2n Jacobian of (x, v) -> (Re theta, Im theta).

    At v = 0 the map is tangent to the identity in these coordinates for
    every base point, so the closed limit (the identity matrix) is returned
    there instead of the u-dependent formulas.
    """
    x, v = tv.x, tv.v
    n = x.size
    nv = float(np.linalg.norm(v))
    nx2 = float(x @ x)
    if nv < _SMALL_V:
        return np.eye(2 * n)
    s = 1.0 - nx2
    length = nv / s
    t = math.tanh(length)
    sech2 = 1.0 - t * t
    u = v / nv
    uut = np.outer(u, u)
    zp = -1j * t * u
    dzp_dv = -1j * ((t / nv) * (np.eye(n) - uut) + (sech2 / s) * uut)
    dzp_dx = (-2j * nv * sech2 / s**2) * np.outer(u, x)
    m_z = delta_differential(x, zp)
    f_a = delta_param_differential(x, zp)
    a_block = f_a + m_z @ dzp_dx
    b_block = m_z @ dzp_dv
    return np.block(
        [[a_block.real, b_block.real], [a_block.imag, b_block.imag]]
    )


def _origin_blocks(v: np.ndarray):
    """Closed-form A1, A2 at the origin for fiber vector v."""
    n = v.size
    nv = float(np.linalg.norm(v))
    eye = np.eye(n)
    if nv < _SMALL_V:
        return eye, eye, 1.0
    t = math.tanh(nv)
    sech2 = 1.0 - t * t
    uut = np.outer(v / nv, v / nv)
    a1 = sech2 * eye + 2.0 * t * t * uut
    a2 = (t / nv) * (eye - uut) + sech2 * uut
    cosh4 = 1.0 / sech2**2
    return a1, a2, cosh4


def _metric_matrix(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    n = x.size
    nx2 = float(x @ x)
    v_origin = v / (nx2 - 1.0)
    a1, a2, cosh4 = _origin_blocks(v_origin)
    g0 = np.zeros((2 * n, 2 * n))
    g0[:n, :n] = cosh4 * (a1 @ a1)
    g0[n:, n:] = cosh4 * (a2 @ a2)
    # differential of the bundle involution (p, w) -> (delta_x(p), d delta_x(p) w)
    # at p = x: base block I/(|x|^2-1), mixed block from the second derivative
    s2 = (1.0 - nx2) ** 2
    d = np.eye(n) / (nx2 - 1.0)
    h = (2.0 * np.outer(x, v) - 2.0 * float(x @ v) * np.eye(n) - 2.0 * np.outer(v, x)) / s2
    j = np.zeros((2 * n, 2 * n))
    j[:n, :n] = d
    j[n:, :n] = h
    j[n:, n:] = d
    g = j.T @ g0 @ j
    return 0.5 * (g + g.T)


def metric_at(tv: TangentVector) -> MetricTensor:
    """Metric tensor at a point of the tangent bundle.

    At the origin the tensor is block diagonal in the closed forms above; at
    a general base point it is the pullback under the exact differential of
    the bundle involution that moves the base point to the origin.
    """
    return MetricTensor(tv, _metric_matrix(tv.x, tv.v))


def christoffel_fd(tv: TangentVector, h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
    """Christoffel symbols Gamma[k, i, j] at tv by central differences.

    Levi-Civita formula with the inverse tensor; symmetric in (i, j) by
    construction.  Raises IllConditionedError if the tensor is numerically
    singular (does not happen inside the chart).
    """
    x, v = tv.x, tv.v
    n = x.size
    dim = 2 * n
    p0 = np.concatenate([x, v])
    g = _metric_matrix(x, v)
    cond = np.linalg.cond(g)
    if not cond < 1e12:
        raise IllConditionedError(f"metric condition number {cond:.3e}")
    grads = np.empty((dim, dim, dim))
    for m in range(dim):
        dp = np.zeros(dim)
        dp[m] = h
        pp = p0 + dp
        pm = p0 - dp
        gp = _metric_matrix(pp[:n], pp[n:])
        gm = _metric_matrix(pm[:n], pm[n:])
        grads[m] = (gp - gm) / (2.0 * h)
    t1 = np.transpose(grads, (2, 0, 1))  # [l,i,j] = d_i g_{j l}
    t2 = np.transpose(grads, (2, 1, 0))  # [l,i,j] = d_j g_{i l}
    s = t1 + t2 - grads
    g_inv = np.linalg.inv(g)
    return 0.5 * np.einsum("kl,lij->kij", g_inv, s)


def geodesic_integrate(
    start: TangentVector,
    velocity,
    length: float,
    steps: int,
    h: float = DEFAULT_METRIC_STEP,
    margin: float = 1e-3,
) -> GeodesicPath:
    """Integrate the geodesic equation from ``start`` with initial velocity.

    Classical fourth-order Runge-Kutta on the first-order system for
    (position, velocity) in the 2n-dimensional chart; ``length`` is total
    parameter length and ``steps`` the number of equal steps.  Raises
    StepOutError if the base point reaches 1 - margin in norm.
    """
    if steps < 1:
        raise DomainError("steps must be >= 1")
    velocity = np.asarray(velocity, dtype=float)
    n = start.n
    if velocity.shape != (2 * n,):
        raise DomainError("velocity must be a 2n-vector")
    dt = length / steps

    def accel(pos, vel):
        gam = christoffel_fd(TangentVector(pos[:n], pos[n:]), h=h)
        return -np.einsum("kij,i,j->k", gam, vel, vel)

    pos = np.concatenate([start.x, start.v])
    vel = velocity.copy()
    samples = [(TangentVector(pos[:n], pos[n:]), vel.copy())]
    for _ in range(steps):
        k1p, k1v = vel, accel(pos, vel)
        k2p = vel + 0.5 * dt * k1v
        k2v = accel(pos + 0.5 * dt * k1p, k2p)
        k3p = vel + 0.5 * dt * k2v
        k3v = accel(pos + 0.5 * dt * k2p, k3p)
        k4p = vel + dt * k3v
        k4v = accel(pos + dt * k3p, k4p)
        pos = pos + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        vel = vel + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        base = pos[:n]
        if float(base @ base) >= (1.0 - margin) ** 2:
            raise StepOutError("geodesic left the chart (base point near the boundary)")
        samples.append((TangentVector(pos[:n], pos[n:]), vel.copy()))
    return GeodesicPath(samples, dt)


def path_energy(path: GeodesicPath) -> np.ndarray:
    """Kinetic energy v^T G v at every sample of an integrated path."""
    out = np.empty(len(path.samples))
    for i, (pt, vel) in enumerate(path.samples):
        out[i] = float(vel @ _metric_matrix(pt.x, pt.v) @ vel)
    return out


def leaf_embed(s: float, t: float) -> complex:
    """Complex leaf coordinate of the tangent vector (s u, t u) along a unit
    direction u: w = (s + i tau) / (1 + i s tau) with tau = tanh(t/(1-s^2)).

    theta(s u, t u) = w u for every unit vector u, so the tangent bundle of
    a diameter embeds as the unit disk {w u}.
    """
    if not abs(s) < 1.0:
        raise DomainError("|s| must be < 1")
    tau = math.tanh(t / (1.0 - s * s))
    return (s + 1j * tau) / (1.0 + 1j * s * tau)
