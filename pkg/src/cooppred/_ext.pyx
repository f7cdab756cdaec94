# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: adaptive RK5(4) planar driver and 1-D reaction-diffusion
steppers.  Kept in lockstep with cooppred._pykernels (the pure-Python twin)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, floor, isfinite, isnan, pow

cnp.import_array()

COMPILED = True

OK = 0
EVENT = 1
BOX = 2
UNDERFLOW = 3
MAXSTEPS = 4
NONFINITE = 5

EV_NONE = 0
EV_VNULL = 1
EV_SECTION_UP = 2

cdef double H_FLOOR = 1e-14

cdef double A21 = 1.0/5.0
cdef double A31 = 3.0/40.0, A32 = 9.0/40.0
cdef double A41 = 44.0/45.0, A42 = -56.0/15.0, A43 = 32.0/9.0
cdef double A51 = 19372.0/6561.0, A52 = -25360.0/2187.0
cdef double A53 = 64448.0/6561.0, A54 = -212.0/729.0
cdef double A61 = 9017.0/3168.0, A62 = -355.0/33.0, A63 = 46732.0/5247.0
cdef double A64 = 49.0/176.0, A65 = -5103.0/18656.0
cdef double B1 = 35.0/384.0, B3 = 500.0/1113.0, B4 = 125.0/192.0
cdef double B5 = -2187.0/6784.0, B6 = 11.0/84.0
cdef double E1 = 71.0/57600.0, E3 = -71.0/16695.0, E4 = 71.0/1920.0
cdef double E5 = -17253.0/339200.0, E6 = 22.0/525.0, E7 = -1.0/40.0


cdef inline void field(double u, double v, double r, double a, double c,
                       double m, double p, double sgn,
                       double* du, double* dv) nogil:
    du[0] = sgn * (r*u*(1.0-u)*(u-a) - (1.0+c*v)*u*v)
    dv[0] = sgn * (m*v*(p*u*(1.0+c*v) - 1.0))


cdef inline void dopri_step(double u, double v, double du, double dv, double h,
                            double r, double a, double c, double m, double p,
                            double sgn, double* un, double* vn,
                            double* dun, double* dvn,
                            double* eu, double* ev) nogil:
    cdef double k1u = du, k1v = dv
    cdef double k2u, k2v, k3u, k3v, k4u, k4v, k5u, k5v, k6u, k6v, k7u, k7v
    field(u + h*A21*k1u, v + h*A21*k1v, r, a, c, m, p, sgn, &k2u, &k2v)
    field(u + h*(A31*k1u + A32*k2u), v + h*(A31*k1v + A32*k2v),
          r, a, c, m, p, sgn, &k3u, &k3v)
    field(u + h*(A41*k1u + A42*k2u + A43*k3u),
          v + h*(A41*k1v + A42*k2v + A43*k3v), r, a, c, m, p, sgn, &k4u, &k4v)
    field(u + h*(A51*k1u + A52*k2u + A53*k3u + A54*k4u),
          v + h*(A51*k1v + A52*k2v + A53*k3v + A54*k4v),
          r, a, c, m, p, sgn, &k5u, &k5v)
    field(u + h*(A61*k1u + A62*k2u + A63*k3u + A64*k4u + A65*k5u),
          v + h*(A61*k1v + A62*k2v + A63*k3v + A64*k4v + A65*k5v),
          r, a, c, m, p, sgn, &k6u, &k6v)
    un[0] = u + h*(B1*k1u + B3*k3u + B4*k4u + B5*k5u + B6*k6u)
    vn[0] = v + h*(B1*k1v + B3*k3v + B4*k4v + B5*k5v + B6*k6v)
    field(un[0], vn[0], r, a, c, m, p, sgn, &k7u, &k7v)
    dun[0] = k7u
    dvn[0] = k7v
    eu[0] = h*(E1*k1u + E3*k3u + E4*k4u + E5*k5u + E6*k6u + E7*k7u)
    ev[0] = h*(E1*k1v + E3*k3v + E4*k4v + E5*k5v + E6*k6v + E7*k7v)


cdef inline double event_value(int kind, double u, double v, double ev_a,
                               double c, double p) nogil:
    if kind == 1:
        return p*u*(1.0+c*v) - 1.0
    elif kind == 2:
        return u - ev_a
    return 1.0


cdef void refine_crossing(double u, double v, double du, double dv, double h,
                          double r, double a, double c, double m, double p,
                          double sgn, int ev_kind, double ev_a, bint use_box,
                          double bul, double buh, double bvl, double bvh,
                          double e_start, double* tb, double* ub, double* vb) nogil:
    cdef double lo = 0.0, hi = h, mid
    cdef double um, vm, dum, dvm, eu, ev, em
    cdef double sign_start = 1.0 if e_start > 0.0 else -1.0
    cdef bint outside, crossed
    cdef int i
    for i in range(60):
        mid = 0.5*(lo + hi)
        if mid <= 0.0 or mid >= h:
            break
        dopri_step(u, v, du, dv, mid, r, a, c, m, p, sgn,
                   &um, &vm, &dum, &dvm, &eu, &ev)
        outside = False
        if use_box:
            outside = (um < bul or um > buh or vm < bvl or vm > bvh)
        if ev_kind != 0:
            em = event_value(ev_kind, um, vm, ev_a, c, p)
            crossed = (em * sign_start <= 0.0)
        else:
            crossed = outside
        if crossed or outside:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-10 * (h if h > 1e-6 else 1e-6):
            break
    dopri_step(u, v, du, dv, hi, r, a, c, m, p, sgn,
               &um, &vm, &dum, &dvm, &eu, &ev)
    tb[0] = hi
    ub[0] = um
    vb[0] = vm


def ode_integrate(double u0, double v0, double r, double a, double c,
                  double m, double p, double sgn, double t_max, double tol,
                  double rec_dt=-1.0, int ev_kind=0, double ev_a=0.0,
                  double arm_dist=0.0, box=(-0.1, 2.0, -0.1, 10.0),
                  long max_steps=50_000_000, double h0=1e-4):
    """Mirror of cooppred._pykernels.ode_integrate (see its docstring)."""
    cdef double bul = box[0]
    cdef double buh = box[1]
    cdef double bvl = box[2]
    cdef double bvh = box[3]
    cdef bint rec = rec_dt > 0.0
    cdef list ts = []
    cdef list us = []
    cdef list vs = []
    cdef double t = 0.0
    cdef double u = u0
    cdef double v = v0
    cdef double next_rec = rec_dt
    cdef bint armed = arm_dist <= 0.0
    cdef double du, dv, e_prev, e_now, un, vn, dun, dvn, eu, ev_err, err, dd
    cdef double tb, ub, vb, grow
    cdef int status = OK
    cdef long steps = 0
    cdef bint hit, hit_box, out, crossed

    if rec:
        ts.append(t); us.append(u); vs.append(v)
    field(u, v, r, a, c, m, p, sgn, &du, &dv)
    e_prev = event_value(ev_kind, u, v, ev_a, c, p) if ev_kind != 0 else 1.0

    cdef double h = h0 if (t_max <= 0.0 or h0 < t_max) else t_max
    while t < t_max:
        if steps >= max_steps:
            status = MAXSTEPS
            break
        if h > t_max - t:
            h = t_max - t
        dopri_step(u, v, du, dv, h, r, a, c, m, p, sgn,
                   &un, &vn, &dun, &dvn, &eu, &ev_err)
        steps += 1
        if not (isfinite(un) and isfinite(vn)):
            if h <= H_FLOOR * (1.0 if t < 1.0 else t):
                status = NONFINITE
                break
            h *= 0.25
            continue
        err = fabs(eu) / (tol * (1.0 + fabs(un)))
        if fabs(ev_err) / (tol * (1.0 + fabs(vn))) > err:
            err = fabs(ev_err) / (tol * (1.0 + fabs(vn)))
        if err > 1.0 or isnan(err):
            grow = 0.9 * pow(err, -0.2)
            h = h * (0.2 if grow < 0.2 else grow)
            if h <= H_FLOOR:
                status = UNDERFLOW
                break
            continue

        if not armed:
            dd = (un - u0)*(un - u0) + (vn - v0)*(vn - v0)
            if dd >= arm_dist * arm_dist:
                armed = True
                if ev_kind != 0:
                    e_prev = event_value(ev_kind, un, vn, ev_a, c, p)

        hit = False
        hit_box = False
        if armed:
            out = (un < bul or un > buh or vn < bvl or vn > bvh)
            e_now = event_value(ev_kind, un, vn, ev_a, c, p) if ev_kind != 0 else 1.0
            crossed = False
            if ev_kind == 1:
                crossed = (e_prev < 0.0 <= e_now) or (e_prev > 0.0 >= e_now)
            elif ev_kind == 2:
                crossed = e_prev < 0.0 <= e_now
            if crossed or out:
                refine_crossing(u, v, du, dv, h, r, a, c, m, p, sgn,
                                ev_kind if crossed else 0, ev_a,
                                out, bul, buh, bvl, bvh, e_prev, &tb, &ub, &vb)
                t = t + tb
                u = ub
                v = vb
                hit = True
                hit_box = out and not crossed
            else:
                e_prev = e_now

        if not hit:
            t += h
            u = un
            v = vn
            du = dun
            dv = dvn
        if rec and (t >= next_rec or t >= t_max or hit):
            ts.append(t); us.append(u); vs.append(v)
            while next_rec <= t:
                next_rec += rec_dt
        if hit:
            status = BOX if hit_box else EVENT
            break
        grow = 0.9 * pow(err + 1e-16, -0.2)
        h = h * (5.0 if grow > 5.0 else grow)
        if h > t_max:
            h = t_max
        if h <= H_FLOOR:
            status = UNDERFLOW
            break

    return (status, t, u, v,
            np.asarray(ts, dtype=float), np.asarray(us, dtype=float),
            np.asarray(vs, dtype=float))


# --- reaction-diffusion kernels ----------------------------------------------

cdef void _mol_rhs(double[::1] u, double[::1] v,
                   double r, double a, double c, double m, double p,
                   double d1, double d2, double h,
                   double[::1] outu, double[::1] outv) nogil:
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double ih2 = 1.0 / (h*h)
    for i in range(1, n-1):
        outu[i] = d1*(u[i-1] - 2.0*u[i] + u[i+1])*ih2
        outv[i] = d2*(v[i-1] - 2.0*v[i] + v[i+1])*ih2
    outu[0] = d1*2.0*(u[1] - u[0])*ih2
    outv[0] = d2*2.0*(v[1] - v[0])*ih2
    outu[n-1] = d1*2.0*(u[n-2] - u[n-1])*ih2
    outv[n-1] = d2*2.0*(v[n-2] - v[n-1])*ih2
    for i in range(n):
        outu[i] += r*u[i]*(1.0-u[i])*(u[i]-a) - (1.0+c*v[i])*u[i]*v[i]
        outv[i] += m*v[i]*(p*u[i]*(1.0+c*v[i]) - 1.0)


cdef bint all_finite(double[::1] w) nogil:
    cdef Py_ssize_t i
    for i in range(w.shape[0]):
        if not isfinite(w[i]):
            return False
    return True


cdef void _rk4_one(double[::1] u, double[::1] v,
                   double r, double a, double c, double m, double p,
                   double d1, double d2, double h, double dt,
                   double[:, ::1] wk) nogil:
    # wk rows: 0..7 = k1u k1v k2u k2v k3u k3v k4u k4v, 8..9 = staging
    cdef Py_ssize_t i, n = u.shape[0]
    _mol_rhs(u, v, r, a, c, m, p, d1, d2, h, wk[0], wk[1])
    for i in range(n):
        wk[8, i] = u[i] + 0.5*dt*wk[0, i]
        wk[9, i] = v[i] + 0.5*dt*wk[1, i]
    _mol_rhs(wk[8], wk[9], r, a, c, m, p, d1, d2, h, wk[2], wk[3])
    for i in range(n):
        wk[8, i] = u[i] + 0.5*dt*wk[2, i]
        wk[9, i] = v[i] + 0.5*dt*wk[3, i]
    _mol_rhs(wk[8], wk[9], r, a, c, m, p, d1, d2, h, wk[4], wk[5])
    for i in range(n):
        wk[8, i] = u[i] + dt*wk[4, i]
        wk[9, i] = v[i] + dt*wk[5, i]
    _mol_rhs(wk[8], wk[9], r, a, c, m, p, d1, d2, h, wk[6], wk[7])
    for i in range(n):
        u[i] = u[i] + (dt/6.0)*(wk[0, i] + 2.0*wk[2, i] + 2.0*wk[4, i] + wk[6, i])
        v[i] = v[i] + (dt/6.0)*(wk[1, i] + 2.0*wk[3, i] + 2.0*wk[5, i] + wk[7, i])


def rd_rk4(u0, v0, double r, double a, double c, double m, double p,
           double d1, double d2, double h, double dt, long nsteps, long rec_every):
    u = np.array(u0, dtype=float)
    v = np.array(v0, dtype=float)
    cdef Py_ssize_t n = u.shape[0]
    work = np.empty((10, n))
    cdef double[:, ::1] wk = work
    cdef double[::1] uu = u
    cdef double[::1] vv = v
    frames_t = [0.0]; frames_u = [u.copy()]; frames_v = [v.copy()]
    cdef int status = OK
    cdef long k
    for k in range(nsteps):
        with nogil:
            _rk4_one(uu, vv, r, a, c, m, p, d1, d2, h, dt, wk)
        if not (all_finite(uu) and all_finite(vv)):
            status = NONFINITE
            break
        if (k+1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k+1)*dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)


cdef void thomas_factor(Py_ssize_t n, double mu, double[::1] lower,
                        double[::1] cp, double[::1] dp) nogil:
    cdef Py_ssize_t i
    cdef double diag = 1.0 + 2.0*mu
    cdef double denom
    for i in range(n):
        lower[i] = -mu
    lower[n-1] = -2.0*mu
    cp[0] = -2.0*mu / diag
    dp[0] = diag
    for i in range(1, n):
        denom = diag - lower[i]*cp[i-1]
        cp[i] = -mu / denom
        dp[i] = denom


cdef void thomas_solve(double[::1] rhs, double[::1] lower, double[::1] cp,
                       double[::1] dp, double[::1] out) nogil:
    cdef Py_ssize_t i, n = rhs.shape[0]
    out[0] = rhs[0] / dp[0]
    for i in range(1, n):
        out[i] = (rhs[i] - lower[i]*out[i-1]) / dp[i]
    for i in range(n-2, -1, -1):
        out[i] -= cp[i]*out[i+1]


def rd_imex(u0, v0, double r, double a, double c, double m, double p,
            double d1, double d2, double h, double dt, long nsteps, long rec_every):
    u = np.array(u0, dtype=float)
    v = np.array(v0, dtype=float)
    cdef Py_ssize_t n = u.shape[0]
    fac = np.empty((6, n))
    scr = np.empty((3, n))
    cdef double[:, ::1] fc = fac
    cdef double[:, ::1] sc = scr
    cdef double[::1] uu = u
    cdef double[::1] vv = v
    cdef Py_ssize_t i
    with nogil:
        thomas_factor(n, d1*dt/(h*h), fc[0], fc[1], fc[2])
        thomas_factor(n, d2*dt/(h*h), fc[3], fc[4], fc[5])
    frames_t = [0.0]; frames_u = [u.copy()]; frames_v = [v.copy()]
    cdef int status = OK
    cdef long k
    for k in range(nsteps):
        with nogil:
            for i in range(n):
                sc[0, i] = uu[i] + dt*(r*uu[i]*(1.0-uu[i])*(uu[i]-a)
                                       - (1.0+c*vv[i])*uu[i]*vv[i])
                sc[1, i] = vv[i] + dt*(m*vv[i]*(p*uu[i]*(1.0+c*vv[i]) - 1.0))
            thomas_solve(sc[0], fc[0], fc[1], fc[2], sc[2])
            for i in range(n):
                uu[i] = sc[2, i]
            thomas_solve(sc[1], fc[3], fc[4], fc[5], sc[2])
            for i in range(n):
                vv[i] = sc[2, i]
        if not (all_finite(uu) and all_finite(vv)):
            status = NONFINITE
            break
        if (k+1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k+1)*dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)


cdef void _lagged(double[:, ::1] ring, Py_ssize_t L, Py_ssize_t n,
                  long k, double lag, double[::1] out) nogil:
    cdef double x = k - lag
    cdef long jf = <long>floor(x)
    cdef double w = x - jf
    cdef long j0 = jf % <long>L
    cdef long j1 = (jf + 1) % <long>L
    cdef Py_ssize_t i
    if j0 < 0:
        j0 += L
    if j1 < 0:
        j1 += L
    if w == 0.0:
        for i in range(n):
            out[i] = ring[j0, i]
    else:
        for i in range(n):
            out[i] = (1.0 - w)*ring[j0, i] + w*ring[j1, i]


def rdd_imex(hist_u, hist_v, double r, double a, double c, double m, double p,
             double d1, double d2, double h, double dt, long nsteps,
             double lag1, double lag2, long rec_every):
    hu = np.ascontiguousarray(hist_u, dtype=float)
    hv = np.ascontiguousarray(hist_v, dtype=float)
    cdef Py_ssize_t L = hu.shape[0]
    cdef Py_ssize_t n = hu.shape[1]
    ring_u = np.empty((L, n))
    ring_v = np.empty((L, n))
    cdef double[:, ::1] ru = ring_u
    cdef double[:, ::1] rv = ring_v
    cdef double[:, ::1] hum = hu
    cdef double[:, ::1] hvm = hv
    cdef Py_ssize_t j, i
    for j in range(L):
        for i in range(n):
            ru[(L - j) % L, i] = hum[j, i]
            rv[(L - j) % L, i] = hvm[j, i]
    u = hu[0].copy()
    v = hv[0].copy()
    cdef double[::1] uu = u
    cdef double[::1] vv = v
    fac = np.empty((6, n))
    scr = np.empty((6, n))
    cdef double[:, ::1] fc = fac
    cdef double[:, ::1] sc = scr
    with nogil:
        thomas_factor(n, d1*dt/(h*h), fc[0], fc[1], fc[2])
        thomas_factor(n, d2*dt/(h*h), fc[3], fc[4], fc[5])
    frames_t = [0.0]; frames_u = [u.copy()]; frames_v = [v.copy()]
    cdef int status = OK
    cdef long k
    for k in range(nsteps):
        with nogil:
            _lagged(ru, L, n, k, lag1, sc[3])
            _lagged(ru, L, n, k, lag2, sc[4])
            _lagged(rv, L, n, k, lag2, sc[5])
            for i in range(n):
                sc[0, i] = uu[i] + dt*(r*uu[i]*(1.0-sc[3, i])*(uu[i]-a)
                                       - (1.0+c*vv[i])*uu[i]*vv[i])
                sc[1, i] = vv[i] + dt*(m*vv[i]*(p*sc[4, i]*(1.0+c*sc[5, i]) - 1.0))
            thomas_solve(sc[0], fc[0], fc[1], fc[2], sc[2])
            for i in range(n):
                uu[i] = sc[2, i]
            thomas_solve(sc[1], fc[3], fc[4], fc[5], sc[2])
            for i in range(n):
                vv[i] = sc[2, i]
            for i in range(n):
                ru[(k+1) % L, i] = uu[i]
                rv[(k+1) % L, i] = vv[i]
        if not (all_finite(uu) and all_finite(vv)):
            status = NONFINITE
            break
        if (k+1) % rec_every == 0 or k == nsteps - 1:
            frames_t.append((k+1)*dt)
            frames_u.append(u.copy())
            frames_v.append(v.copy())
    return status, np.asarray(frames_t), np.vstack(frames_u), np.vstack(frames_v)
