"""Jacobian of the bundle map, transported metric, Christoffel symbols,
geodesic integration, and the leaf geometry."""

import math

import numpy as np
import pytest

from lieball import (
    StepOutError,
    TangentVector,
    christoffel_fd,
    geodesic_integrate,
    leaf_embed,
    metric_at,
    motion_apply,
    motion_differential,
    motion_second_differential,
    path_energy,
    theta,
    theta_jacobian,
)
from lieball.oracles import fd_jacobian, random_motion, random_tangent

ARTANH_HALF = math.atanh(0.5)


def _real_theta(n):
    def fn(p):
        z = theta(TangentVector(p[:n], p[n:]))
        return np.concatenate([z.real, z.imag])

    return fn


def test_jacobian_zero_fiber_limit():
    for x in (np.zeros(3), np.array([0.3, -0.2, 0.1])):
        jac = theta_jacobian(TangentVector(x, np.zeros(3)))
        np.testing.assert_allclose(jac, np.eye(6), atol=0)
        # the limit is honest: finite differences around v = 0 agree
        fd = fd_jacobian(_real_theta(3), np.concatenate([x, np.zeros(3)]), h=1e-7)
        np.testing.assert_allclose(fd, np.eye(6), atol=1e-6)


def test_jacobian_origin_closed_forms():
    # A1 u = (sech^2 + 2 tanh^2) u = 1.25 u and A2 u = sech^2 u = 0.75 u
    # at tanh|v| = 0.5
    u = np.array([1.0, 0, 0])
    tv = TangentVector(np.zeros(3), ARTANH_HALF * u)
    jac = theta_jacobian(tv)
    a1 = jac[:3, :3]
    a2 = jac[3:, 3:]
    np.testing.assert_allclose(a1 @ u, 1.25 * u, atol=1e-14)
    np.testing.assert_allclose(a2 @ u, 0.75 * u, atol=1e-14)
    np.testing.assert_allclose(jac[:3, 3:], 0, atol=1e-14)
    np.testing.assert_allclose(jac[3:, :3], 0, atol=1e-14)
    fd = fd_jacobian(_real_theta(3), np.concatenate([tv.x, tv.v]))
    np.testing.assert_allclose(jac, fd, atol=1e-6)


def test_jacobian_matches_fd_random():
    rng = np.random.default_rng(31)
    for _ in range(30):
        tv = random_tangent(3, rng, 0.8, 3.0)
        jac = theta_jacobian(tv)
        fd = fd_jacobian(_real_theta(3), np.concatenate([tv.x, tv.v]))
        assert np.abs(jac - fd).max() <= 1e-6


def test_metric_identity_at_origin():
    g = metric_at(TangentVector(np.zeros(3), np.zeros(3))).matrix
    np.testing.assert_allclose(g, np.eye(6), atol=0)


def test_metric_golden_blocks():
    # cosh^4 = 16/9 at tanh = 0.5; B1 along u is (16/9)(1.25)^2 = 25/9 and
    # B2 along u is (16/9)(0.75)^2 = 1
    u = np.array([1.0, 0, 0])
    g = metric_at(TangentVector(np.zeros(3), ARTANH_HALF * u)).matrix
    assert g[0, 0] == pytest.approx(25.0 / 9.0, abs=1e-14)
    assert g[3, 3] == pytest.approx(1.0, abs=1e-14)


def test_metric_conformal_factor_oracle():
    # oracle: the invariant metric along the orbit of the origin is the
    # conformal factor 1/(1-|w|^2)^2 at w = i tanh|v| u, pushed through the
    # finite-difference Jacobian of theta
    u = np.array([0.0, 1.0, 0.0])
    v = ARTANH_HALF * u
    tv = TangentVector(np.zeros(3), v)
    g = metric_at(tv).matrix
    fd = fd_jacobian(_real_theta(3), np.concatenate([tv.x, tv.v]))
    conf = 1.0 / (1.0 - 0.25) ** 2
    np.testing.assert_allclose(g, conf * fd.T @ fd, atol=1e-9)


def test_metric_cross_block_vanishes_at_origin():
    rng = np.random.default_rng(32)
    for _ in range(50):
        v = rng.standard_normal(3) * 2.0
        g = metric_at(TangentVector(np.zeros(3), v)).matrix
        assert np.abs(g[:3, 3:]).max() <= 1e-8


def test_metric_positive_definite():
    rng = np.random.default_rng(33)
    for _ in range(100):
        tv = random_tangent(3, rng, 0.9, 3.0)
        g = metric_at(tv).matrix
        np.testing.assert_allclose(g, g.T, atol=1e-12)
        assert np.linalg.eigvalsh(g)[0] > 0


def test_metric_zero_section_is_conformal():
    x = np.array([0.4, -0.2, 0.1])
    g = metric_at(TangentVector(x, np.zeros(3))).matrix
    scale = 1.0 / (1.0 - x @ x) ** 2
    np.testing.assert_allclose(g, scale * np.eye(6), atol=1e-12)


def test_metric_equivariance():
    rng = np.random.default_rng(34)
    for _ in range(30):
        g_mo = random_motion(3, rng, parity=1)
        tv = random_tangent(3, rng, 0.7, 2.0)
        dg = motion_differential(g_mo, tv.x)
        h = motion_second_differential(g_mo, tv.x, tv.v)
        big = np.zeros((6, 6))
        big[:3, :3] = dg
        big[3:, :3] = h
        big[3:, 3:] = dg
        target = TangentVector(motion_apply(g_mo, tv.x), dg @ tv.v)
        pulled = big.T @ metric_at(target).matrix @ big
        assert np.abs(pulled - metric_at(tv).matrix).max() <= 1e-7


def test_christoffel_symmetry_and_flatness_at_origin():
    gam = christoffel_fd(TangentVector(np.zeros(3), np.zeros(3)))
    np.testing.assert_allclose(gam, np.transpose(gam, (0, 2, 1)), atol=1e-9)
    # the tensor is stationary at the origin, so only fd noise remains
    assert np.abs(gam).max() <= 1e-8


def test_christoffel_metric_compatibility():
    rng = np.random.default_rng(35)
    tv = random_tangent(3, rng, 0.5, 1.5)
    gam = christoffel_fd(tv)
    g = metric_at(tv).matrix
    h = 1e-5
    p0 = np.concatenate([tv.x, tv.v])
    for k in range(6):
        dp = np.zeros(6)
        dp[k] = h
        gp = metric_at(TangentVector((p0 + dp)[:3], (p0 + dp)[3:])).matrix
        gm = metric_at(TangentVector((p0 - dp)[:3], (p0 - dp)[3:])).matrix
        dk = (gp - gm) / (2 * h)
        nabla = dk - np.einsum("li,lj->ij", gam[:, k, :], g) - np.einsum(
            "lj,il->ij", gam[:, k, :], g
        )
        assert np.abs(nabla).max() <= 1e-5


def test_geodesic_zero_velocity_is_constant():
    start = TangentVector([0.2, 0.1, 0.0], [0.0, 0.3, 0.0])
    path = geodesic_integrate(start, np.zeros(6), 1.0, 20)
    for pt, vel in path.samples:
        np.testing.assert_allclose(pt.x, start.x, atol=1e-12)
        np.testing.assert_allclose(pt.v, start.v, atol=1e-12)
        np.testing.assert_allclose(vel, 0, atol=1e-12)


def test_geodesic_vertical_line():
    u = np.array([0.0, 0.0, 1.0])
    path = geodesic_integrate(
        TangentVector(np.zeros(3), np.zeros(3)), np.concatenate([np.zeros(3), u]), 1.0, 200
    )
    for pt, _ in path.samples:
        assert np.linalg.norm(pt.x) <= 1e-6
        assert np.linalg.norm(pt.v - (pt.v @ u) * u) <= 1e-6
    # the fiber coordinate grows monotonically along the line
    heights = [pt.v @ u for pt, _ in path.samples]
    assert all(b > a for a, b in zip(heights, heights[1:]))


def test_geodesic_horizontal_base_line():
    u = np.array([1.0, 0.0, 0.0])
    path = geodesic_integrate(
        TangentVector(np.zeros(3), np.zeros(3)), np.concatenate([u, np.zeros(3)]), 1.0, 200
    )
    for pt, _ in path.samples:
        assert np.linalg.norm(pt.v) <= 1e-6
        assert np.linalg.norm(pt.x - (pt.x @ u) * u) <= 1e-6


def test_geodesic_energy_conservation_short():
    rng = np.random.default_rng(36)
    start = TangentVector([0.1, 0.0, 0.0], [0.0, 0.4, 0.0])
    vel = rng.standard_normal(6) * 0.5
    path = geodesic_integrate(start, vel, 0.5, 200)
    energy = path_energy(path)
    assert np.abs(energy - energy[0]).max() / energy[0] <= 1e-7


def test_geodesic_step_out():
    u = np.array([1.0, 0.0, 0.0])
    with pytest.raises(StepOutError):
        geodesic_integrate(
            TangentVector(0.9 * u, np.zeros(3)), np.concatenate([5 * u, np.zeros(3)]), 1.0, 50
        )


def test_leaf_embed_examples():
    assert leaf_embed(0.0, 0.7) == pytest.approx(1j * math.tanh(0.7), abs=1e-15)
    assert leaf_embed(0.35, 0.0) == pytest.approx(0.35, abs=1e-15)
    # s = 0.5, tau = 0.5: (0.5+0.5i)/(1+0.25i) = (10 + 6i)/17
    w = leaf_embed(0.5, 0.75 * ARTANH_HALF)
    assert w.real == pytest.approx(10 / 17, abs=1e-12)
    assert w.imag == pytest.approx(6 / 17, abs=1e-12)
    assert w.real == pytest.approx(0.58824, abs=5e-6)
    assert w.imag == pytest.approx(0.35294, abs=5e-6)


def test_leaf_embed_matches_theta_component():
    rng = np.random.default_rng(37)
    for _ in range(50):
        u = rng.standard_normal(4)
        u /= np.linalg.norm(u)
        s = 1.8 * rng.random() - 0.9
        t = 4.0 * rng.random() - 2.0
        w = leaf_embed(s, t)
        z = theta(TangentVector(s * u, t * u))
        assert np.abs(z - w * u).max() <= 1e-10


def test_leaf_is_poincare_disk():
    # pullback of the bundle metric to leaf coordinates equals the disk
    # metric |dw|^2/(1-|w|^2)^2 with constant 1 (fixed by G(0,0) = I)
    rng = np.random.default_rng(38)
    h = 1e-6
    for _ in range(25):
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        s = 1.5 * rng.random() - 0.75
        t = 2.0 * rng.random() - 1.0
        emb = np.zeros((6, 2))
        emb[:3, 0] = u
        emb[3:, 1] = u
        g = metric_at(TangentVector(s * u, t * u)).matrix
        pulled = emb.T @ g @ emb
        w = leaf_embed(s, t)
        ws = (leaf_embed(s + h, t) - leaf_embed(s - h, t)) / (2 * h)
        wt = (leaf_embed(s, t + h) - leaf_embed(s, t - h)) / (2 * h)
        conf = 1.0 / (1.0 - abs(w) ** 2) ** 2
        disk = conf * np.array(
            [
                [abs(ws) ** 2, (ws * np.conj(wt)).real],
                [(ws * np.conj(wt)).real, abs(wt) ** 2],
            ]
        )
        assert np.abs(pulled - disk).max() / np.abs(disk).max() <= 1e-6
