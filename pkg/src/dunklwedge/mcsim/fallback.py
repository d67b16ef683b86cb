"""Pure-numpy versions of the path kernels, vectorised across paths.

Each path consumes the same draws in the same order as in :mod:`.kernels`;
transcendental functions come from numpy rather than libm, so the two
backends agree statistically and usually, but not always, to the last bit.
"""

from __future__ import annotations

import math

import numpy as np

from .rng import SALT, mix64, normal_pair, uniforms


def hitting_numpy(keys, p, k0f, k1f, rho, phi, dt0, eps, t_max, c_ang, c_rad):
    n = keys.size
    beta = math.pi / (2.0 * p)
    coef = (2.0 * p * (k0f + k1f) + 1.0) / 2.0
    out_t = np.full(n, t_max)
    out_status = np.ones(n, dtype=np.int64)
    out_steps = np.zeros(n, dtype=np.int64)
    r = np.full(n, float(rho))
    th = np.full(n, float(phi))
    t = np.zeros(n)
    d = np.minimum(th, beta - th)
    counter = np.zeros(n, dtype=np.uint64)
    act = np.arange(n)
    while act.size:
        ra, tha, ta, da = r[act], th[act], t[act], d[act]
        dt = np.minimum(np.minimum(dt0, c_ang * (ra * da) ** 2), c_rad * ra * ra)
        dt = np.where(ta + dt >= t_max, t_max - ta, dt)
        z1, z2 = normal_pair(keys[act], counter[act])
        counter[act] += np.uint64(2)
        out_steps[act] += 1
        sq = np.sqrt(dt)
        tn = np.tan(p * tha)
        ct = 1.0 / tn
        r2 = ra * ra
        f = p * (k0f * ct - k1f * tn)
        cs2 = 1.0 + ct * ct
        sc2 = 1.0 + tn * tn
        f1 = -p * p * (k0f * cs2 + k1f * sc2)
        f2 = 2.0 * p * p * p * (k0f * cs2 * ct - k1f * sc2 * tn)
        dw = sq * z2
        r_new = ra + coef / ra * dt + sq * z1
        th_new = tha + f / r2 * dt + dw / ra + f1 / (2.0 * r2 * ra) * dw * dt + 0.5 * (f * f1 + 0.5 * f2) / (r2 * r2) * dt * dt
        radial = r_new <= eps
        d_new = np.minimum(th_new, beta - th_new)
        hit = ~radial & (d_new <= eps)
        with np.errstate(divide="ignore", invalid="ignore"):
            out_t[act[radial]] = (ta + dt * (ra - eps) / (ra - r_new))[radial]
            out_t[act[hit]] = (ta + dt * (da - eps) / (da - d_new))[hit]
        out_status[act[radial]] = 2
        out_status[act[hit]] = 0
        t_new = ta + dt
        r[act], th[act], t[act], d[act] = r_new, th_new, t_new, d_new
        alive = ~radial & ~hit & (t_new < t_max)
        act = act[alive]
    return out_t, out_status, out_steps


def _exit_fraction(x, y, x1, y1, h, u, sb, cb, bridge):
    a1, b1 = y, y1
    a2, b2 = x * sb - y * cb, x1 * sb - y1 * cb
    if b1 <= 0.0 or b2 <= 0.0:
        f1 = a1 / (a1 - b1) if b1 <= 0.0 else 1.0
        f2 = a2 / (a2 - b2) if b2 <= 0.0 else 1.0
        return min(f1, f2)
    if bridge:
        q = (1.0 - math.exp(-2.0 * a1 * b1 / h)) * (1.0 - math.exp(-2.0 * a2 * b2 / h))
        if u > q:
            return 0.5
    return -1.0


def _subdivide(key2, counter2, x, y, x1, y1, dt, lift_limit, max_halvings, exited, sb, cb, bridge):
    """Scalar twin of ``kernels._subdivide``; only runs on the rare refined steps."""
    k2 = np.array([key2], dtype=np.uint64)
    n = 2
    for _ in range(max_halvings):
        h = dt / n
        cx, cy = x, y
        acc, off, ok = 0.0, -1.0, True
        for j in range(n):
            m = n - j
            if m == 1:
                nx, ny = x1, y1
                u = float(uniforms(k2, counter2)[0])
                counter2 += 1
            else:
                g1, g2 = normal_pair(k2, counter2)
                u = float(uniforms(k2, counter2 + 2)[0])
                counter2 += 3
                s = math.sqrt(h * (m - 1) / m)
                nx = cx + (x1 - cx) / m + s * float(g1[0])
                ny = cy + (y1 - cy) / m + s * float(g2[0])
            dth = math.atan2(cx * ny - cy * nx, cx * nx + cy * ny)
            if abs(dth) > lift_limit:
                ok = False
                break
            acc += dth
            if not exited and off < 0.0:
                fr = _exit_fraction(cx, cy, nx, ny, h, u, sb, cb, bridge)
                if fr >= 0.0:
                    off = (j + fr) * h
            cx, cy = nx, ny
        if ok:
            return True, acc, off, counter2
        n *= 2
    return False, 0.0, -1.0, counter2


def winding_numpy(keys, p, x0, y0, horizon, dt0, dt_floor, c_step, lift_limit, max_halvings, bridge=True):
    n = keys.size
    beta = math.pi / (2.0 * p)
    sb, cb = math.sin(beta), math.cos(beta)
    keys2 = mix64(keys ^ SALT)
    counter2 = [0] * n
    x = np.full(n, float(x0))
    y = np.full(n, float(y0))
    theta = np.full(n, math.atan2(y0, x0))
    t = np.zeros(n)
    counter = np.zeros(n, dtype=np.uint64)
    inside = y0 > 0.0 and x0 * sb - y0 * cb > 0.0
    exited = np.full(n, not inside)
    t0 = np.full(n, horizon if inside else 0.0)
    status = np.ones(n, dtype=np.int64)
    act = np.arange(n)
    while act.size:
        xa, ya, ta = x[act], y[act], t[act]
        dt = np.minimum(np.maximum(np.minimum(dt0, c_step * (xa * xa + ya * ya)), dt_floor), horizon - ta)
        ka, ca = keys[act], counter[act]
        z1, z2 = normal_pair(ka, ca)
        u = uniforms(ka, ca + np.uint64(2))
        counter[act] += np.uint64(3)
        sq = np.sqrt(dt)
        x1 = xa + sq * z1
        y1 = ya + sq * z2
        dth = np.arctan2(xa * y1 - ya * x1, xa * x1 + ya * y1)
        bad = np.abs(dth) > lift_limit
        good = ~bad
        theta[act[good]] += dth[good]
        live = good & ~exited[act]
        a1, b1 = ya, y1
        a2, b2 = xa * sb - ya * cb, x1 * sb - y1 * cb
        crossed = live & ((b1 <= 0.0) | (b2 <= 0.0))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            f1 = np.where(b1 <= 0.0, a1 / (a1 - b1), 1.0)
            f2 = np.where(b2 <= 0.0, a2 / (a2 - b2), 1.0)
            q = (1.0 - np.exp(-2.0 * a1 * b1 / dt)) * (1.0 - np.exp(-2.0 * a2 * b2 / dt))
        bridged = live & ~crossed & (u > q) if bridge else np.zeros_like(crossed)
        t0[act[crossed]] = (ta + dt * np.minimum(f1, f2))[crossed]
        t0[act[bridged]] = (ta + 0.5 * dt)[bridged]
        exited[act[crossed | bridged]] = True
        failed = np.zeros(act.size, dtype=bool)
        for j in np.flatnonzero(bad):
            i = act[j]
            ok, acc, off, counter2[i] = _subdivide(
                keys2[i], counter2[i], xa[j], ya[j], x1[j], y1[j], dt[j], lift_limit, max_halvings,
                bool(exited[i]), sb, cb, bridge,
            )
            if not ok:
                status[i] = 3
                failed[j] = True
                continue
            theta[i] += acc
            if off >= 0.0:
                exited[i] = True
                t0[i] = ta[j] + off
        x[act], y[act], t[act] = x1, y1, ta + dt
        act = act[~failed & (ta + dt < horizon)]
    status = np.where(status == 3, 3, np.where(exited, 0, 1))
    return theta, t0, status
