"""Pure-Python reference implementations of the hot numerical kernels.

Same call signatures and semantics as the compiled extension
``cooppred._ext``; the backend is chosen at import time in
:mod:`cooppred.kernels`.  Keep the two in lockstep: the equivalence tests
compare them trajectory-by-trajectory.
"""
from __future__ import annotations

import math

import numpy as np

COMPILED = False

# integration outcomes
OK = 0          # reached t_max
EVENT = 1       # requested event fired
BOX = 2         # left the bounding box
UNDERFLOW = 3   # step size below hard floor
MAXSTEPS = 4    # step budget exhausted
NONFINITE = 5   # state lost finiteness

# event selectors
EV_NONE = 0
EV_VNULL = 1      # predator-nullcline crossing  p*u*(1+c*v) - 1 = 0
EV_SECTION_UP = 2  # u = ev_a crossed with du/dt > 0 (integrated field)

_H_FLOOR = 1e-14

# Dormand-Prince 5(4) tableau
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# error weights: 5th-order minus 4th-order solution
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _f(u, v, r, a, c, m, p, sgn):
    du = r * u * (1.0 - u) * (u - a) - (1.0 + c * v) * u * v
    dv = m * v * (p * u * (1.0 + c * v) - 1.0)
    return sgn * du, sgn * dv


def _dopri_step(u, v, du, dv, h, r, a, c, m, p, sgn):
    """One Dormand-Prince step from (u, v) with derivative (du, dv) at the start.

    Returns (u_new, v_new, du_new, dv_new, err_u, err_v); the FSAL stage
    doubles as the derivative at the new point.
    """
    k1u, k1v = du, dv
    k2u, k2v = _f(u + h * _A21 * k1u, v + h * _A21 * k1v, r, a, c, m, p, sgn)
    k3u, k3v = _f(u + h * (_A31 * k1u + _A32 * k2u),
                  v + h * (_A31 * k1v + _A32 * k2v), r, a, c, m, p, sgn)
    k4u, k4v = _f(u + h * (_A41 * k1u + _A42 * k2u + _A43 * k3u),
                  v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v), r, a, c, m, p, sgn)
    k5u, k5v = _f(u + h * (_A51 * k1u + _A52 * k2u + _A53 * k3u + _A54 * k4u),
                  v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v),
                  r, a, c, m, p, sgn)
    k6u, k6v = _f(u + h * (_A61 * k1u + _A62 * k2u + _A63 * k3u + _A64 * k4u + _A65 * k5u),
                  v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v),
                  r, a, c, m, p, sgn)
    un = u + h * (_B1 * k1u + _B3 * k3u + _B4 * k4u + _B5 * k5u + _B6 * k6u)
    vn = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
    k7u, k7v = _f(un, vn, r, a, c, m, p, sgn)
    eu = h * (_E1 * k1u + _E3 * k3u + _E4 * k4u + _E5 * k5u + _E6 * k6u + _E7 * k7u)
    ev = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
    return un, vn, k7u, k7v, eu, ev


def _event_value(kind, u, v, du, dv, ev_a, c, p):
    if kind == EV_VNULL:
        return p * u * (1.0 + c * v) - 1.0
    if kind == EV_SECTION_UP:
        return u - ev_a
    return 1.0


def ode_integrate(u0, v0, r, a, c, m, p, sgn, t_max, tol,
                  rec_dt=-1.0, ev_kind=EV_NONE, ev_a=0.0, arm_dist=0.0,
                  box=(-0.1, 2.0, -0.1, 10.0), max_steps=50_000_000,
                  h0=1e-4):
    """Adaptive RK5(4) drive of the planar model with event detection.

    sgn = +1 integrates the field, -1 the time-reversed field; time always
    advances from 0 to at most t_max.  Events are disabled until the orbit
    leaves the disk of radius arm_dist around the start point.  EV_SECTION_UP
    fires on crossings of u = ev_a with du/dt > 0 in the integrated field.

    Returns (status, t, u, v, ts, us, vs); on EVENT/BOX the returned state is
    the refined crossing point.
    """
    box_ulo, box_uhi, box_vlo, box_vhi = box
    rec = rec_dt > 0.0
    ts, us, vs = [], [], []
    t, u, v = 0.0, float(u0), float(v0)
    if rec:
        ts.append(t); us.append(u); vs.append(v)
    next_rec = rec_dt

    armed = arm_dist <= 0.0
    du, dv = _f(u, v, r, a, c, m, p, sgn)
    e_prev = _event_value(ev_kind, u, v, du, dv, ev_a, c, p) if ev_kind else 1.0

    h = min(h0, t_max) if t_max > 0.0 else h0
    status = OK
    steps = 0
    while t < t_max:
        if steps >= max_steps:
            status = MAXSTEPS
            break
        if h > t_max - t:
            h = t_max - t
        un, vn, dun, dvn, eu, ev_err = _dopri_step(u, v, du, dv, h, r, a, c, m, p, sgn)
        steps += 1
        if not (math.isfinite(un) and math.isfinite(vn)):
            if h <= _H_FLOOR * max(1.0, t):
                status = NONFINITE
                break
            h *= 0.25
            continue
        err = max(abs(eu) / (tol * (1.0 + abs(un))), abs(ev_err) / (tol * (1.0 + abs(vn))))
        if err > 1.0 or math.isnan(err):
            h = max(h * max(0.2, 0.9 * err ** -0.2), _H_FLOOR)
            if h <= _H_FLOOR:
                status = UNDERFLOW
                break
            continue

        # accepted step over [t, t+h]
        if not armed:
            dd = (un - u0) * (un - u0) + (vn - v0) * (vn - v0)
            if dd >= arm_dist * arm_dist:
                armed = True
                if ev_kind:
                    e_prev = _event_value(ev_kind, un, vn, dun, dvn, ev_a, c, p)

        hit = False
        hit_box = False
        if armed:
            out = (un < box_ulo or un > box_uhi or vn < box_vlo or vn > box_vhi)
            e_now = _event_value(ev_kind, un, vn, dun, dvn, ev_a, c, p) if ev_kind else 1.0
            crossed = False
            if ev_kind == EV_VNULL:
                crossed = (e_prev < 0.0 <= e_now) or (e_prev > 0.0 >= e_now)
            elif ev_kind == EV_SECTION_UP:
                crossed = e_prev < 0.0 <= e_now
            if crossed or out:
                tb, ub, vb = _refine_crossing(
                    u, v, du, dv, h, r, a, c, m, p, sgn,
                    ev_kind if crossed else EV_NONE, ev_a,
                    (box_ulo, box_uhi, box_vlo, box_vhi) if out else None, e_prev)
                t, u, v = t + tb, ub, vb
                hit = True
                hit_box = out and not crossed
            else:
                e_prev = e_now

        if not hit:
            t += h
            u, v, du, dv = un, vn, dun, dvn
        if rec and (t >= next_rec or t >= t_max or hit):
            ts.append(t); us.append(u); vs.append(v)
            while next_rec <= t:
                next_rec += rec_dt
        if hit:
            status = BOX if hit_box else EVENT
            break
        h = min(h * min(5.0, 0.9 * (err + 1e-16) ** -0.2), t_max)
        if h <= _H_FLOOR:
            status = UNDERFLOW
            break
    return (status, t, u, v,
            np.asarray(ts, dtype=float), np.asarray(us, dtype=float),
            np.asarray(vs, dtype=float))


def _refine_crossing(u, v, du, dv, h, r, a, c, m, p, sgn, ev_kind, ev_a, box, e_start):
    """Bisect the crossing time inside one accepted step.

    Each trial re-steps from the step start with a single (smaller) RK5 step,
    so the refined state carries one-step local error only.
    """
    lo, hi = 0.0, h
    sign_start = 1.0 if e_start > 0.0 else -1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid <= 0.0 or mid >= h:
            break
        um, vm, _, _, _, _ = _dopri_step(u, v, du, dv, mid, r, a, c, m, p, sgn)
        outside = False
        if box is not None:
            outside = (um < box[0] or um > box[1] or vm < box[2] or vm > box[3])
        if ev_kind:
            dum, dvm = _f(um, vm, r, a, c, m, p, sgn)
            em = _event_value(ev_kind, um, vm, dum, dvm, ev_a, c, p)
            crossed = (em * sign_start <= 0.0)
        else:
            crossed = outside
        if crossed or outside:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-10 * max(h, 1e-6):
            break
    um, vm, _, _, _, _ = _dopri_step(u, v, du, dv, hi, r, a, c, m, p, sgn)
    return hi, um, vm


# --- reaction-diffusion kernels ----------------------------------------------

def _reaction(u, v, r, a, c, m, p):
    fu = r * u * (1.0 - u) * (u - a) - (1.0 + c * v) * u * v
    fv = m * v * (p * u * (1.0 + c * v) - 1.0)
    return fu, fv


def _neumann_lap(w, h):
    lap = np.empty_like(w)
    lap[1:-1] = (w[:-2] - 2.0 * w[1:-1] + w[2:])
    lap[0] = 2.0 * (w[1] - w[0])
    lap[-1] = 2.0 * (w[-2] - w[-1])
    return lap / (h * h)


def rd_rk4(u0, v0, r, a, c, m, p, d1, d2, h, dt, nsteps, rec_every):
    """Explicit RK4 on the method-of-lines system with mirror Neumann closure.

    Returns (status, ts, U, V) where U, V have one row per recorded frame
    (frame 0 is the initial data, the final state is always recorded).
    """
    u = np.array(u0, dtype=float)
    v = np.array(v0, dtype=float)

    def f(uu, vv):
        fu, fv = _reaction(uu, vv, r, a, c, m, p)
        return d1 * _neumann_lap(uu, h) + fu, d2 * _neumann_lap(vv, h) + fv

    frames_t, frames_u, frames_v = [0.0], [u.copy()], [v.copy()]
    status = OK
    for k in range(nsteps):
        k1u, k1v = f(u, v)
        k2u, k2v = f(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v)
        k3u, k3v = f(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v)
        k4u, k4v = f(u + dt * k3u, v + dt * k3v)
        u = u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            status = NONFINITE
            break
        if (k + 1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k + 1) * dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)


def _thomas_factor(n, mu):
    """Forward-elimination coefficients for I - mu*L with mirror Neumann rows."""
    diag = np.full(n, 1.0 + 2.0 * mu)
    lower = np.full(n, -mu)
    upper = np.full(n, -mu)
    upper[0] = -2.0 * mu
    lower[-1] = -2.0 * mu
    cp = np.empty(n)
    dp = np.empty(n)
    cp[0] = upper[0] / diag[0]
    dp[0] = diag[0]
    for i in range(1, n):
        denom = diag[i] - lower[i] * cp[i - 1]
        cp[i] = upper[i] / denom
        dp[i] = denom
    return lower, cp, dp


def _thomas_solve(rhs_vec, lower, cp, dp):
    n = rhs_vec.shape[0]
    y = np.empty(n)
    y[0] = rhs_vec[0] / dp[0]
    for i in range(1, n):
        y[i] = (rhs_vec[i] - lower[i] * y[i - 1]) / dp[i]
    for i in range(n - 2, -1, -1):
        y[i] -= cp[i] * y[i + 1]
    return y


def rd_imex(u0, v0, r, a, c, m, p, d1, d2, h, dt, nsteps, rec_every):
    """Semi-implicit stepping: backward-Euler diffusion, forward-Euler reaction."""
    u = np.array(u0, dtype=float)
    v = np.array(v0, dtype=float)
    n = u.shape[0]
    fac1 = _thomas_factor(n, d1 * dt / (h * h))
    fac2 = _thomas_factor(n, d2 * dt / (h * h))
    frames_t, frames_u, frames_v = [0.0], [u.copy()], [v.copy()]
    status = OK
    for k in range(nsteps):
        fu, fv = _reaction(u, v, r, a, c, m, p)
        u = _thomas_solve(u + dt * fu, *fac1)
        v = _thomas_solve(v + dt * fv, *fac2)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            status = NONFINITE
            break
        if (k + 1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k + 1) * dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)


def rdd_imex(hist_u, hist_v, r, a, c, m, p, d1, d2, h, dt, nsteps,
             lag1, lag2, rec_every):
    """Two-delay variant; delayed factors read from a ring of past fields.

    hist_u[j] is the u field at time -j*dt (j = 0 .. L-1); lags are measured
    in steps and may be fractional (linear interpolation between slots).
    Requires L >= floor(max(lag1, lag2)) + 2.
    """
    L = hist_u.shape[0]
    n = hist_u.shape[1]
    ring_u = np.empty((L, n))
    ring_v = np.empty((L, n))
    for j in range(L):
        ring_u[(-j) % L] = hist_u[j]
        ring_v[(-j) % L] = hist_v[j]
    u = hist_u[0].copy()
    v = hist_v[0].copy()
    fac1 = _thomas_factor(n, d1 * dt / (h * h))
    fac2 = _thomas_factor(n, d2 * dt / (h * h))
    frames_t, frames_u, frames_v = [0.0], [u.copy()], [v.copy()]
    status = OK

    def lagged(ring, k, lag):
        x = k - lag
        jf = math.floor(x)
        w = x - jf
        if w == 0.0:
            return ring[jf % L]
        return (1.0 - w) * ring[jf % L] + w * ring[(jf + 1) % L]

    for k in range(nsteps):
        u_t1 = lagged(ring_u, k, lag1)
        u_t2 = lagged(ring_u, k, lag2)
        v_t2 = lagged(ring_v, k, lag2)
        fu = r * u * (1.0 - u_t1) * (u - a) - (1.0 + c * v) * u * v
        fv = m * v * (p * u_t2 * (1.0 + c * v_t2) - 1.0)
        u = _thomas_solve(u + dt * fu, *fac1)
        v = _thomas_solve(v + dt * fv, *fac2)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            status = NONFINITE
            break
        ring_u[(k + 1) % L] = u
        ring_v[(k + 1) % L] = v
        if (k + 1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k + 1) * dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)
