"""Named verification suites runnable from the CLI (``verify <suite>``).

Each suite draws seeded random data, checks one family of invariants, and
reports {suite, n, trials, seed, max_error, pass}.  A suite passes when
every check lands inside its tolerance; max_error is the largest raw error
observed (1.0 marks a failed yes/no check).
"""

from __future__ import annotations

import numpy as np

from . import correspondence as cor
from . import metric as met
from . import moebius as moe
from . import oracles as orc
from .core import BallRegion, classify, hermitian_norm_sq, lie_gauge, q_form
from .spheres import (
    OrientedSphere,
    TangentVector,
    sphere_euc_to_hyp,
    sphere_hyp_to_euc,
    t_inv,
    t_map,
)

_SUITES: dict = {}


def _suite(name, dims):
    def deco(fn):
        _SUITES[name] = (fn, dims)
        return fn

    return deco


def suite_names():
    return list(_SUITES)


def default_dims(name):
    return _SUITES[name][1]


def run_suite(name: str, n: int | None = None, trials: int = 200, seed: int = 0):
    """Run one suite, returning one report dict per dimension."""
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}")
    fn, dims = _SUITES[name]
    dims = (n,) if n is not None else dims
    reports = []
    for idx, dim in enumerate(dims):
        rng = np.random.default_rng([seed, sorted(_SUITES).index(name), dim])
        checks = fn(dim, trials, rng)
        errors = [float(e) for e, _ in checks]
        reports.append(
            {
                "suite": name,
                "n": int(dim),
                "trials": int(trials),
                "seed": int(seed),
                "max_error": max(errors) if errors else 0.0,
                "pass": all(e <= tol for e, tol in checks),
            }
        )
    return reports


def run_all(n: int | None = None, trials: int = 200, seed: int = 0):
    reports = []
    for name in _SUITES:
        reports.extend(run_suite(name, n=n, trials=trials, seed=seed))
    return reports


def _bool_check(ok: bool):
    return (0.0 if ok else 1.0, 0.5)


# --------------------------------------------------------------------------


@_suite("gauge", (3, 4, 5))
def _gauge(n, trials, rng):
    checks = []
    # real slice: gauge is exactly the squared norm and classifies interior
    err = 0.0
    ok = True
    for _ in range(trials):
        x = orc.random_ball_point(n, rng, 0.999)
        g = lie_gauge(x)
        # bit-for-bit: the radicand cancels exactly on the real slice
        err = max(err, abs(g - hermitian_norm_sq(x)))
        ok = ok and classify(x).region is BallRegion.INTERIOR
    checks.append((err, 0.0))
    checks.append(_bool_check(ok))
    # invariance under unit complex multiplication
    err = 0.0
    for _ in range(trials):
        z = orc.random_lie_point(n, rng, 0.5 + 1.4 * rng.random())
        phase = np.exp(1j * 2 * np.pi * rng.random())
        err = max(err, abs(lie_gauge(phase * z) - lie_gauge(z)))
    checks.append((err, 1e-12))
    # farthest sphere point: projection-formula oracle plus sampled maximum
    err = 0.0
    err_sample = 0.0
    for i in range(max(trials // 4, 8)):
        z = orc.random_lie_point(n, rng, 0.2 + 0.7 * rng.random())
        x, y = np.real(z), np.imag(z)
        ny = np.linalg.norm(y)
        if ny == 0:
            continue
        yhat = y / ny
        planar = np.linalg.norm(x - (x @ yhat) * yhat)
        far_sq = float(x @ x) + ny * ny + 2.0 * ny * planar
        err = max(err, abs(lie_gauge(z) - far_sq))
        pts = orc.sample_sphere(t_map(z), 512, int(rng.integers(2**31))).points
        sampled = float((pts * pts).sum(axis=1).max())
        err_sample = max(err_sample, sampled - far_sq)  # one-sided bound
    checks.append((err, 1e-9))
    checks.append((err_sample, 1e-9))
    return checks


@_suite("distance", (3,))
def _distance(n, trials, rng):
    checks = []
    err_tri = 0.0
    err_inv = 0.0
    for _ in range(trials):
        p = orc.random_ball_point(n, rng)
        q = orc.random_ball_point(n, rng)
        r = orc.random_ball_point(n, rng)
        dpq = moe.hyp_distance(p, q)
        err_tri = max(err_tri, moe.hyp_distance(p, r) - dpq - moe.hyp_distance(q, r))
        g = orc.random_motion(n, rng)
        gp = moe.motion_apply(g, p)
        gq = moe.motion_apply(g, q)
        err_inv = max(err_inv, abs(moe.hyp_distance(gp, gq) - dpq))
    checks.append((err_tri, 1e-9))
    checks.append((err_inv, 1e-9))
    # midpoint splits the distance evenly
    err_mid = 0.0
    for _ in range(trials // 2):
        p = orc.random_ball_point(n, rng)
        q = orc.random_ball_point(n, rng)
        m = moe.hyp_midpoint(p, q)
        d = moe.hyp_distance(p, q)
        err_mid = max(
            err_mid,
            abs(moe.hyp_distance(p, m) - d / 2),
            abs(moe.hyp_distance(m, q) - d / 2),
        )
    checks.append((err_mid, 1e-9))
    return checks


@_suite("qratio", (3,))
def _qratio(n, trials, rng):
    err = 0.0
    done = 0
    while done < max(trials, 1000):
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        zp = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        qz, qzp = q_form(z), q_form(zp)
        if min(abs(qz), abs(qzp)) < 0.05:
            continue
        done += 1
        lhs = q_form(z / qz - zp / qzp) * qz * qzp
        rhs = q_form(z - zp)
        err = max(err, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    return [(err, 1e-10)]


@_suite("involution", (3,))
def _involution(n, trials, rng):
    err = 0.0
    for _ in range(trials):
        inv = moe.Inversion(rng.standard_normal(n), 0.5 + rng.random())
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        try:
            err = max(err, float(np.abs(moe.inversion_apply(inv, moe.inversion_apply(inv, z)) - z).max()))
        except moe.IsotropicConeError:  # pragma: no cover - measure-zero draw
            continue
        a = orc.random_ball_point(n, rng, 0.8)
        w = orc.random_lie_point(n, rng, 0.9 * rng.random())
        err = max(err, float(np.abs(moe.delta_apply(a, moe.delta_apply(a, w)) - w).max()))
    return [(err, 1e-10)]


@_suite("conformality", (3,))
def _conformality(n, trials, rng):
    err = 0.0
    for _ in range(max(trials // 4, 20)):
        g = orc.random_motion(n, rng)
        p = orc.random_ball_point(n, rng, 0.8)
        _, dev = orc.conformality_check(g, p)
        err = max(err, dev)
    return [(err, 1e-6)]


@_suite("stability", (3,))
def _stability(n, trials, rng):
    err = 0.0
    for _ in range(trials):
        z = orc.random_lie_point(n, rng, 1.0)
        g = orc.random_motion(n, rng)
        err = max(err, abs(lie_gauge(moe.motion_apply(g, z)) - 1.0))
    return [(err, 1e-8)]


@_suite("roundtrip", (2, 3, 5))
def _roundtrip(n, trials, rng):
    err_fwd = 0.0
    err_bwd = 0.0
    for _ in range(trials):
        tv = orc.random_tangent(n, rng, 0.95, 5.0)
        z = cor.theta(tv)
        back = cor.theta_inv(z)
        err_fwd = max(
            err_fwd,
            float(np.abs(back.x - tv.x).max()),
            float(np.abs(back.v - tv.v).max()),
        )
        z2 = orc.random_lie_point(n, rng, 0.98 * rng.random())
        err_bwd = max(err_bwd, float(np.abs(cor.theta(cor.theta_inv(z2)) - z2).max()))
    return [(err_fwd, 1e-8), (err_bwd, 1e-8)]


@_suite("range", (3,))
def _range(n, trials, rng):
    checks = []
    ok = True
    for _ in range(trials):
        tv = orc.random_tangent(n, rng, 0.95, 5.0)
        ok = ok and lie_gauge(cor.theta(tv)) < 1.0
    checks.append(_bool_check(ok))
    gaps = {5.0: 1e-3, 10.0: 1e-7, 20.0: 1e-7}
    err = {5.0: 0.0, 10.0: 0.0, 20.0: 0.0}
    monotone = True
    for _ in range(max(trials // 10, 10)):
        x = orc.random_ball_point(n, rng, 0.6)
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        prev = 0.0
        for t in (5.0, 10.0, 20.0):
            g = lie_gauge(cor.theta(TangentVector(x, t * u)))
            err[t] = max(err[t], abs(1.0 - g))
            # near saturation the gauge wobbles around 1 at the 1e-8 scale
            monotone = monotone and g >= prev - 1e-7
            prev = g
    for t, tol in gaps.items():
        checks.append((err[t], tol))
    checks.append(_bool_check(monotone))
    return checks


@_suite("equivariance", (3, 4))
def _equivariance(n, trials, rng):
    err = 0.0
    for parity in (1, -1):
        for _ in range(trials):
            g = orc.random_motion(n, rng, parity=parity)
            tv = orc.random_tangent(n, rng, 0.8, 3.0)
            lhs = cor.theta(moe.tangent_action(g, tv))
            rhs = moe.motion_apply(g, cor.theta(tv))
            if parity < 0:
                rhs = np.conj(rhs)
            err = max(err, float(np.abs(lhs - rhs).max()))
    return [(err, 1e-8)]


@_suite("zero-section", (3,))
def _zero_section(n, trials, rng):
    err = 0.0
    for _ in range(trials):
        x = orc.random_ball_point(n, rng, 0.99)
        z = cor.theta(TangentVector(x, np.zeros(n)))
        err = max(err, float(np.abs(z - x).max()))
    return [(err, 1e-15)]


@_suite("leaf", (3,))
def _leaf(n, trials, rng):
    checks = []
    err = 0.0
    for _ in range(trials):
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        s = 1.9 * rng.random() - 0.95
        t = 6.0 * rng.random() - 3.0
        w = met.leaf_embed(s, t)
        z = cor.theta(TangentVector(s * u, t * u))
        err = max(err, float(np.abs(z - w * u).max()))
    checks.append((err, 1e-10))
    # leaf carries a Poincare-disk metric with one global constant (fixed
    # at w = 0 where the tensor is the identity, giving C = 1)
    h = 1e-6
    err = 0.0
    for _ in range(max(trials // 2, 50)):
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        s = 1.6 * rng.random() - 0.8
        t = 3.0 * rng.random() - 1.5
        emb = np.zeros((2 * n, 2))
        emb[:n, 0] = u
        emb[n:, 1] = u
        g = met.metric_at(TangentVector(s * u, t * u)).matrix
        pulled = emb.T @ g @ emb
        w = met.leaf_embed(s, t)
        ws = (met.leaf_embed(s + h, t) - met.leaf_embed(s - h, t)) / (2 * h)
        wt = (met.leaf_embed(s, t + h) - met.leaf_embed(s, t - h)) / (2 * h)
        conf = 1.0 / (1.0 - abs(w) ** 2) ** 2
        disk = conf * np.array(
            [
                [abs(ws) ** 2, (ws * np.conj(wt)).real],
                [(ws * np.conj(wt)).real, abs(wt) ** 2],
            ]
        )
        err = max(err, float(np.abs(pulled - disk).max() / np.abs(disk).max()))
    checks.append((err, 1e-6))
    return checks


@_suite("sphere-transport", (3,))
def _sphere_transport(n, trials, rng):
    err_iso = 0.0
    err_fit = 0.0
    sign_ok = True
    for _ in range(trials):
        z = orc.random_lie_point(n, rng, 0.15 + 0.6 * rng.random())
        g = orc.random_motion(n, rng, max_a=0.6)
        sphere = t_map(z)
        image = moe.motion_apply_sphere(g, sphere)
        w = t_inv(image)
        pts = orc.sample_sphere(sphere, 50, int(rng.integers(2**31))).points
        mapped = np.array([moe.motion_apply(g, p) for p in pts])
        for q in mapped:
            err_iso = max(err_iso, abs(q_form(w - q)))
        fitted, _ = orc.fit_sphere(mapped)
        err_fit = max(
            err_fit,
            float(np.abs(fitted.center - image.center).max()),
            abs(fitted.radius - image.radius),
        )
        y = sphere.radius_vector
        for p in pts[:10]:
            dg = orc.fd_jacobian(lambda q: moe.motion_apply(g, q), p)
            sign_ok = sign_ok and float(image.radius_vector @ (dg @ y)) > 0.0
    return [(err_iso, 1e-9), (err_fit, 1e-8), _bool_check(sign_ok)]


@_suite("sphere-convert", (3,))
def _sphere_convert(n, trials, rng):
    checks = []
    c = np.zeros(n)
    c[0] = 0.5
    c_e, r_e = sphere_hyp_to_euc(c, 0.75 * np.arctanh(0.5))
    golden = max(abs(c_e[0] - 0.4), float(np.abs(c_e[1:]).max()), abs(r_e - 0.4))
    checks.append((golden, 1e-12))
    err = 0.0
    for _ in range(trials):
        c = orc.random_ball_point(n, rng, 0.9)
        # bound the hyperbolic radius ratio: past ~4 the euclidean data
        # saturates and no double-precision inverse can round-trip
        r = (0.02 + 3.98 * rng.random()) * (1.0 - float(c @ c))
        c_e, r_e = sphere_hyp_to_euc(c, r)
        c2, r2 = sphere_euc_to_hyp(c_e, r_e)
        err = max(err, float(np.abs(c2 - c).max()), abs(r2 - r))
    checks.append((err, 1e-10))
    return checks


@_suite("boundary", (3,))
def _boundary(n, trials, rng):
    err_norm = 0.0
    err_iso = 0.0
    err_far = 0.0
    for _ in range(trials):
        z = orc.random_lie_point(n, rng, 1.0)
        p = cor.boundary_tangency(z)
        err_norm = max(err_norm, abs(float(np.linalg.norm(p)) - 1.0))
        err_iso = max(err_iso, abs(q_form(z - p)))
        pts = orc.sample_sphere(t_map(z), 256, int(rng.integers(2**31))).points
        sampled_max = float(np.sqrt((pts * pts).sum(axis=1).max()))
        err_far = max(err_far, sampled_max - float(np.linalg.norm(p)))
    return [(err_norm, 1e-8), (err_iso, 1e-8), (err_far, 1e-9)]


@_suite("jacobian", (3,))
def _jacobian(n, trials, rng):
    err = 0.0
    for _ in range(max(trials // 4, 20)):
        tv = orc.random_tangent(n, rng, 0.8, 3.0)
        exact = met.theta_jacobian(tv)

        def real_theta(p):
            z = cor.theta(TangentVector(p[:n], p[n:]))
            return np.concatenate([z.real, z.imag])

        fd = orc.fd_jacobian(real_theta, np.concatenate([tv.x, tv.v]))
        err = max(err, float(np.abs(exact - fd).max()))
    return [(err, 1e-6)]


@_suite("metric", (3,))
def _metric(n, trials, rng):
    checks = []
    err_cross = 0.0
    err_pd = 0.0
    for _ in range(trials):
        v = rng.standard_normal(n) * 1.5
        g = met.metric_at(TangentVector(np.zeros(n), v)).matrix
        err_cross = max(err_cross, float(np.abs(g[:n, n:]).max()))
        tv = orc.random_tangent(n, rng, 0.9, 3.0)
        g2 = met.metric_at(tv).matrix
        err_pd = max(err_pd, 0.0 if np.linalg.eigvalsh(g2)[0] > 0 else 1.0)
    checks.append((err_cross, 1e-8))
    checks.append((err_pd, 0.5))
    # golden blocks along the fiber direction at tanh|v| = 1/2:
    # base block cosh^4 (sech^2 + 2 tanh^2)^2 = 25/9, fiber block cosh^4 sech^4 = 1
    v = np.zeros(n)
    v[0] = np.arctanh(0.5)
    g = met.metric_at(TangentVector(np.zeros(n), v)).matrix
    checks.append((abs(g[0, 0] - 25.0 / 9.0), 1e-12))
    checks.append((abs(g[n, n] - 1.0), 1e-12))
    # equivariance under orientation preserving motions
    err = 0.0
    for _ in range(max(trials // 4, 20)):
        gmo = orc.random_motion(n, rng, parity=1)
        tv = orc.random_tangent(n, rng, 0.7, 2.0)
        dg = moe.motion_differential(gmo, tv.x)
        h = moe.motion_second_differential(gmo, tv.x, tv.v)
        big = np.zeros((2 * n, 2 * n))
        big[:n, :n] = dg
        big[n:, :n] = h
        big[n:, n:] = dg
        target = TangentVector(moe.motion_apply(gmo, tv.x), dg @ tv.v)
        lhs = big.T @ met.metric_at(target).matrix @ big
        err = max(err, float(np.abs(lhs - met.metric_at(tv).matrix).max()))
    checks.append((err, 1e-7))
    return checks


@_suite("christoffel", (3,))
def _christoffel(n, trials, rng):
    checks = []
    gam0 = met.christoffel_fd(TangentVector(np.zeros(n), np.zeros(n)))
    checks.append((float(np.abs(gam0 - np.transpose(gam0, (0, 2, 1))).max()), 1e-9))
    checks.append((float(np.abs(gam0).max()), 1e-8))
    # metric compatibility: covariant derivative of the tensor vanishes
    h = met.DEFAULT_METRIC_STEP
    err = 0.0
    for _ in range(max(trials // 40, 3)):
        tv = orc.random_tangent(n, rng, 0.5, 1.5)
        p0 = np.concatenate([tv.x, tv.v])
        gam = met.christoffel_fd(tv)
        g = met.metric_at(tv).matrix
        for k in range(2 * n):
            dp = np.zeros(2 * n)
            dp[k] = h
            gp = met.metric_at(TangentVector((p0 + dp)[:n], (p0 + dp)[n:])).matrix
            gm = met.metric_at(TangentVector((p0 - dp)[:n], (p0 - dp)[n:])).matrix
            dk = (gp - gm) / (2 * h)
            nabla = dk - np.einsum("li,lj->ij", gam[:, k, :], g) - np.einsum("lj,il->ij", gam[:, k, :], g)
            err = max(err, float(np.abs(nabla).max()))
    checks.append((err, 1e-5))
    return checks


@_suite("geodesic", (3,))
def _geodesic(n, trials, rng):
    checks = []
    u = rng.standard_normal(n)
    u /= np.linalg.norm(u)
    # vertical line through the origin stays a line
    vel = np.concatenate([np.zeros(n), u])
    path = met.geodesic_integrate(TangentVector(np.zeros(n), np.zeros(n)), vel, 1.0, 1000)
    dev = 0.0
    for pt, _ in path.samples:
        dev = max(dev, float(np.linalg.norm(pt.x)), float(np.linalg.norm(pt.v - (pt.v @ u) * u)))
    checks.append((dev, 1e-6))
    energy = met.path_energy(path)
    checks.append((float(np.abs(energy - energy[0]).max() / energy[0]), 1e-7))
    # fiber over the origin is totally geodesic
    v0 = 0.8 * u
    w = rng.standard_normal(n)
    w -= (w @ u) * u
    w /= np.linalg.norm(w)
    path2 = met.geodesic_integrate(TangentVector(np.zeros(n), v0), np.concatenate([np.zeros(n), w]), 1.0, 1000)
    dev = max(float(np.linalg.norm(pt.x)) for pt, _ in path2.samples)
    checks.append((dev, 1e-6))
    energy2 = met.path_energy(path2)
    checks.append((float(np.abs(energy2 - energy2[0]).max() / energy2[0]), 1e-7))
    # vector lines in any fiber are affinely parametrized geodesics:
    # the ray (x0, t u) has zero acceleration, so its residual is the
    # Christoffel contraction with the constant velocity (0, u)
    err = 0.0
    for _ in range(3):
        x0 = orc.random_ball_point(n, rng, 0.5)
        u2 = rng.standard_normal(n)
        u2 /= np.linalg.norm(u2)
        cdot = np.concatenate([np.zeros(n), u2])
        for t in (0.3, 1.0, 2.0):
            gam = met.christoffel_fd(TangentVector(x0, t * u2))
            res = np.einsum("kij,i,j->k", gam, cdot, cdot)
            err = max(err, float(np.abs(res).max()))
    checks.append((err, 1e-6))
    return checks


@_suite("reproducibility", (3,))
def _reproducibility(n, trials, rng):
    sphere = OrientedSphere(np.zeros(n), np.eye(n)[0] * 0.5)
    a = orc.sample_sphere(sphere, 64, 1234).points
    b = orc.sample_sphere(sphere, 64, 1234).points
    return [_bool_check(bool(np.all(a == b)))]
