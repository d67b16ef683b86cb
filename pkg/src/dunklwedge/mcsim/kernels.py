"""Compiled path kernels (numba).  Mirrors :mod:`.fallback` step for step.

Status codes: 0 boundary hit, 1 censored at the horizon, 2 radius fell
below ``eps`` (the corner of the wedge), 3 lifting violation.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV53 = 1.0 / 9007199254740992.0
_TWO_PI = 2.0 * math.pi
_SALT = np.uint64(0xD1B54A32D192ED03)  # side stream for step refinement


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


@njit(cache=True, inline="always")
def _uniform(key, counter):
    z = _mix64(key + (counter + _ONE) * _GOLDEN)
    return (np.float64(z >> _S11) + 1.0) * _INV53


@njit(cache=True, inline="always")
def _normals(key, counter):
    u1 = _uniform(key, counter)
    u2 = _uniform(key, counter + _ONE)
    rad = math.sqrt(-2.0 * math.log(u1))
    ang = _TWO_PI * u2
    return rad * math.cos(ang), rad * math.sin(ang)


@njit(cache=True, parallel=True)
def hitting_kernel(keys, p, k0f, k1f, rho, phi, dt0, eps, t_max, c_ang, c_rad, out_t, out_status, out_steps):
    """Polar SDE of the flipped process until absorption.

    Euler-Maruyama in ``r``; in ``theta`` the Euler step carries the two
    second-order Taylor terms of the singular drift, which removes most of
    the weak error near the walls.
    """
    beta = math.pi / (2.0 * p)
    coef = (2.0 * p * (k0f + k1f) + 1.0) / 2.0
    for i in prange(keys.size):
        key = keys[i]
        r = rho
        th = phi
        t = 0.0
        counter = np.uint64(0)
        steps = 0
        status = 1
        t0 = t_max
        d = min(th, beta - th)
        while True:
            dt = min(dt0, c_ang * (r * d) ** 2, c_rad * r * r)
            if t + dt >= t_max:
                dt = t_max - t
            z1, z2 = _normals(key, counter)
            counter += np.uint64(2)
            steps += 1
            sq = math.sqrt(dt)
            tn = math.tan(p * th)
            ct = 1.0 / tn
            r2 = r * r
            f = p * (k0f * ct - k1f * tn)
            # second-order Taylor terms of the angular drift (weak order 2 in theta)
            cs2 = 1.0 + ct * ct
            sc2 = 1.0 + tn * tn
            f1 = -p * p * (k0f * cs2 + k1f * sc2)
            f2 = 2.0 * p * p * p * (k0f * cs2 * ct - k1f * sc2 * tn)
            dw = sq * z2
            r_new = r + coef / r * dt + sq * z1
            th_new = th + f / r2 * dt + dw / r + f1 / (2.0 * r2 * r) * dw * dt + 0.5 * (f * f1 + 0.5 * f2) / (r2 * r2) * dt * dt
            if r_new <= eps:
                status = 2
                t0 = t + dt * (r - eps) / (r - r_new)
                break
            d_new = min(th_new, beta - th_new)
            if d_new <= eps:
                status = 0
                t0 = t + dt * (d - eps) / (d - d_new)
                break
            t += dt
            r = r_new
            th = th_new
            d = d_new
            if t >= t_max:
                break
        out_t[i] = t0
        out_status[i] = status
        out_steps[i] = steps


@njit(cache=True, inline="always")
def _exit_fraction(x, y, x1, y1, h, u, sb, cb, bridge):
    """Fraction of the segment at which it leaves the wedge, or -1 if it stays."""
    a1 = y
    b1 = y1
    a2 = x * sb - y * cb
    b2 = x1 * sb - y1 * cb
    if b1 <= 0.0 or b2 <= 0.0:
        f1 = a1 / (a1 - b1) if b1 <= 0.0 else 1.0
        f2 = a2 / (a2 - b2) if b2 <= 0.0 else 1.0
        return min(f1, f2)
    if bridge:
        q = (1.0 - math.exp(-2.0 * a1 * b1 / h)) * (1.0 - math.exp(-2.0 * a2 * b2 / h))
        if u > q:
            return 0.5
    return -1.0


@njit(cache=True)
def _subdivide(key2, counter2, x, y, x1, y1, dt, lift_limit, max_halvings, exited, sb, cb, bridge):
    """Refine one step into ``2^m`` pieces by sequential Brownian-bridge sampling.

    Returns ``(ok, dtheta, exit_time_offset, counter2)``; the offset is -1 when
    no exit happens (or the path had already exited).
    """
    n = 2
    for _ in range(max_halvings):
        h = dt / n
        cx = x
        cy = y
        acc = 0.0
        off = -1.0
        ok = True
        for j in range(n):
            m = n - j
            if m == 1:
                nx = x1
                ny = y1
                u = _uniform(key2, counter2)
                counter2 += _ONE
            else:
                g1, g2 = _normals(key2, counter2)
                u = _uniform(key2, counter2 + np.uint64(2))
                counter2 += np.uint64(3)
                s = math.sqrt(h * (m - 1) / m)
                nx = cx + (x1 - cx) / m + s * g1
                ny = cy + (y1 - cy) / m + s * g2
            dth = math.atan2(cx * ny - cy * nx, cx * nx + cy * ny)
            if abs(dth) > lift_limit:
                ok = False
                break
            acc += dth
            if not exited and off < 0.0:
                f = _exit_fraction(cx, cy, nx, ny, h, u, sb, cb, bridge)
                if f >= 0.0:
                    off = (j + f) * h
            cx = nx
            cy = ny
        if ok:
            return True, acc, off, counter2
        n *= 2
    return False, 0.0, -1.0, counter2


@njit(cache=True, parallel=True)
def winding_kernel(keys, p, x0, y0, horizon, dt0, dt_floor, c_step, lift_limit, max_halvings, bridge,
                   out_theta, out_t0, out_status):
    """Exact Gaussian increments of planar BM with continuous argument and exit detection.

    Exit is detected at the grid points and, when ``bridge`` is set, also
    between them with the Brownian-bridge crossing probability of each
    wall's half-plane.  A step whose argument increment exceeds
    ``lift_limit`` is refined in place (see :func:`_subdivide`).
    """
    beta = math.pi / (2.0 * p)
    sb = math.sin(beta)
    cb = math.cos(beta)
    theta_start = math.atan2(y0, x0)
    for i in prange(keys.size):
        key = keys[i]
        key2 = _mix64(key ^ _SALT)
        x = x0
        y = y0
        theta = theta_start
        t = 0.0
        counter = np.uint64(0)
        counter2 = np.uint64(0)
        status = 1
        inside = y > 0.0 and x * sb - y * cb > 0.0
        t0 = horizon if inside else 0.0
        exited = not inside
        while t < horizon:
            dt = min(max(min(dt0, c_step * (x * x + y * y)), dt_floor), horizon - t)
            z1, z2 = _normals(key, counter)
            u = _uniform(key, counter + np.uint64(2))
            counter += np.uint64(3)
            sq = math.sqrt(dt)
            x1 = x + sq * z1
            y1 = y + sq * z2
            dth = math.atan2(x * y1 - y * x1, x * x1 + y * y1)
            if abs(dth) <= lift_limit:
                theta += dth
                if not exited:
                    f = _exit_fraction(x, y, x1, y1, dt, u, sb, cb, bridge)
                    if f >= 0.0:
                        exited = True
                        t0 = t + f * dt
            else:
                ok, acc, off, counter2 = _subdivide(key2, counter2, x, y, x1, y1, dt, lift_limit,
                                                    max_halvings, exited, sb, cb, bridge)
                if not ok:
                    status = 3
                    break
                theta += acc
                if off >= 0.0:
                    exited = True
                    t0 = t + off
            x = x1
            y = y1
            t += dt
        if status != 3:
            status = 0 if exited else 1
        out_theta[i] = theta
        out_t0[i] = t0
        out_status[i] = status
