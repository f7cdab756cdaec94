"""Steady states: existence, classification, Hopf and saddle-node points,
and the first Lyapunov coefficient at the Hopf point.

Interior equilibria are the roots of

    F(u) = r c p^2 u^2 (1-u)(u-a) - (1 - p u) = 0,   0 < u < 1/p,

paired with v = (1 - pu)/(cpu).  Roots are located by a sign-change scan
plus bisection rather than closed-form quartic formulas; near the
saddle-node tangency the scan is backed by a hump-maximum refinement.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoBracketError, NotApplicableError, NotAtHopfError
from .model import Regime, cooperation_regime, hessians, jacobian_uv, rhs_uv, third_partials
from .params import ModelParams

__all__ = [
    "EquilibriumKind", "Classification", "Equilibrium", "BifurcationThresholds",
    "boundary_equilibria", "interior_equilibria", "classify",
    "hopf_point", "saddle_node_point", "first_lyapunov", "thresholds",
    "interior_root_function",
]

TRACE_TOL = 1e-9   # |trace| below this (with det > 0) is non-hyperbolic
DET_TOL = 1e-9     # |det| below this is non-hyperbolic
SCAN_POINTS = 4096


class EquilibriumKind(enum.Enum):
    ORIGIN = "origin"
    ALLEE = "allee"
    CARRYING_CAPACITY = "carrying_capacity"
    INTERIOR_PRIMARY = "interior_primary"
    INTERIOR_SADDLE = "interior_saddle"


class Classification(enum.Enum):
    STABLE_NODE = "stable_node"
    UNSTABLE_NODE = "unstable_node"
    SADDLE = "saddle"
    STABLE_FOCUS = "stable_focus"
    UNSTABLE_FOCUS = "unstable_focus"
    NON_HYPERBOLIC = "non_hyperbolic"


@dataclass(frozen=True)
class Equilibrium:
    u: float
    v: float
    kind: EquilibriumKind
    trace: float
    det: float
    classification: Classification

    def as_dict(self) -> dict:
        return {
            "u": self.u, "v": self.v, "kind": self.kind.value,
            "trace": self.trace, "det": self.det,
            "classification": self.classification.value,
        }


@dataclass(frozen=True)
class BifurcationThresholds:
    p_hopf: float
    p_saddle_node: float | None
    p_top: float
    lyapunov: float


def _classify_linear(trace: float, det: float) -> Classification:
    if abs(det) < DET_TOL or (det > 0.0 and abs(trace) < TRACE_TOL):
        return Classification.NON_HYPERBOLIC
    if det < 0.0:
        return Classification.SADDLE
    disc = trace * trace - 4.0 * det
    if trace < 0.0:
        return Classification.STABLE_NODE if disc >= 0.0 else Classification.STABLE_FOCUS
    return Classification.UNSTABLE_NODE if disc >= 0.0 else Classification.UNSTABLE_FOCUS


def boundary_equilibria(q: ModelParams) -> list[Equilibrium]:
    """The three axis equilibria with their linear classification."""
    out = []
    # extinction state: eigenvalues -ra, -m
    out.append(Equilibrium(0.0, 0.0, EquilibriumKind.ORIGIN,
                           trace=-q.r * q.a - q.m, det=q.r * q.a * q.m,
                           classification=Classification.STABLE_NODE))
    # Allee point: eigenvalues ra(1-a), m(pa-1)
    lam1 = q.r * q.a * (1.0 - q.a)
    lam2 = q.m * (q.p * q.a - 1.0)
    out.append(Equilibrium(q.a, 0.0, EquilibriumKind.ALLEE,
                           trace=lam1 + lam2, det=lam1 * lam2,
                           classification=_classify_linear(lam1 + lam2, lam1 * lam2)))
    # carrying capacity: eigenvalues -r(1-a), m(p-1)
    lam1 = -q.r * (1.0 - q.a)
    lam2 = q.m * (q.p - 1.0)
    out.append(Equilibrium(1.0, 0.0, EquilibriumKind.CARRYING_CAPACITY,
                           trace=lam1 + lam2, det=lam1 * lam2,
                           classification=_classify_linear(lam1 + lam2, lam1 * lam2)))
    return out


def interior_root_function(u, q: ModelParams):
    """F(u) whose roots in (0, 1/p) are the interior equilibrium abscissae."""
    return q.r * q.c * q.p**2 * u**2 * (1.0 - u) * (u - q.a) - (1.0 - q.p * u)


def _bisect_root(q: ModelParams, lo: float, hi: float) -> float:
    flo = interior_root_function(lo, q)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = interior_root_function(mid, q)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def _hump_maximum(q: ModelParams, us, Fs):
    """Golden-section refinement of the interior maximum of F."""
    i = int(np.argmax(Fs))
    lo = us[max(i - 1, 0)]
    hi = us[min(i + 1, len(us) - 1)]
    phi = 0.5 * (3.0 - math.sqrt(5.0))
    x1 = lo + phi * (hi - lo)
    x2 = hi - phi * (hi - lo)
    f1 = interior_root_function(x1, q)
    f2 = interior_root_function(x2, q)
    for _ in range(200):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = hi - phi * (hi - lo)
            f2 = interior_root_function(x2, q)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = lo + phi * (hi - lo)
            f1 = interior_root_function(x1, q)
        if hi - lo < 1e-14:
            break
    umax = 0.5 * (lo + hi)
    return umax, interior_root_function(umax, q)


def interior_equilibria(q: ModelParams) -> list[Equilibrium]:
    """All interior equilibria (0, 1 or 2), ordered by increasing u."""
    upper = 1.0 / q.p
    us = np.linspace(upper * 1e-9, upper * (1.0 - 1e-12), SCAN_POINTS)
    Fs = interior_root_function(us, q)
    roots = []
    sign_changes = np.nonzero(np.diff(np.sign(Fs)) != 0)[0]
    for i in sign_changes:
        roots.append(_bisect_root(q, us[i], us[i + 1]))
    if not roots and Fs[0] < 0.0 and Fs[-1] < 0.0:
        # near-tangent hump narrower than the scan grid (strong regime, p
        # just above the saddle-node value): recover the two crossings
        umax, fmax = _hump_maximum(q, us, Fs)
        if fmax > 0.0:
            i = int(np.argmax(Fs))
            roots.append(_bisect_root(q, us[max(i - 2, 0)], umax))
            roots.append(_bisect_root(q, umax, us[min(i + 2, len(us) - 1)]))
    out = []
    for u in sorted(roots):
        v = (1.0 - q.p * u) / (q.c * q.p * u)
        if v <= 0.0:
            continue
        out.append(classify(u, v, q))
    return out


def classify(u: float, v: float, q: ModelParams) -> Equilibrium:
    """Classify an interior equilibrium candidate from the equilibrium-form
    trace/determinant."""
    trace = -q.r * u * (2.0 * u - q.a - 1.0) + q.m * (1.0 - q.p * u)
    det = q.m * q.p * u * v * (q.r * q.c * u * (1.0 + q.a - 2.0 * u)
                               + (1.0 + q.c * v) * (1.0 + 2.0 * q.c * v))
    kind = EquilibriumKind.INTERIOR_PRIMARY if det > 0.0 else EquilibriumKind.INTERIOR_SADDLE
    return Equilibrium(u, v, kind, trace, det, _classify_linear(trace, det))


def primary_equilibrium(q: ModelParams) -> Equilibrium | None:
    """The interior equilibrium with positive determinant, if present."""
    for eq in interior_equilibria(q):
        if eq.kind is EquilibriumKind.INTERIOR_PRIMARY:
            return eq
    return None


def saddle_equilibrium(q: ModelParams) -> Equilibrium | None:
    for eq in interior_equilibria(q):
        if eq.kind is EquilibriumKind.INTERIOR_SADDLE:
            return eq
    return None


def _trace_of_primary(base: ModelParams, p: float) -> float | None:
    eq = primary_equilibrium(base.with_p(p))
    return None if eq is None else eq.trace


def hopf_point(base: ModelParams, p_lo: float | None = None,
               p_hi: float | None = None, dp_tol: float = 1e-8):
    """Locate p where the primary equilibrium's trace vanishes.

    Returns (p_hopf, dalpha_dp) where dalpha_dp > 0 certifies transversality
    (finite-difference derivative of the eigenvalue real part in p).
    Raises NoBracketError when the trace does not change sign on the scanned
    interval.
    """
    hi_default = 2.0 / (base.a + 1.0)
    lo = p_lo if p_lo is not None else 1e-3
    hi = p_hi if p_hi is not None else min(hi_default + 0.2, 1.0 / base.a - 1e-9)
    ps = np.linspace(lo, hi, 600)
    traces = [_trace_of_primary(base, p) for p in ps]
    bracket = None
    for i in range(len(ps) - 1):
        ti, tj = traces[i], traces[i + 1]
        if ti is not None and tj is not None and ti * tj < 0.0:
            bracket = (ps[i], ps[i + 1], ti)
            break
    if bracket is None:
        raise NoBracketError("primary-equilibrium trace has no sign change on "
                             f"[{lo}, {hi}]")
    a_, b_, fa = bracket
    while b_ - a_ > dp_tol:
        mid = 0.5 * (a_ + b_)
        fm = _trace_of_primary(base, mid)
        if fa * fm <= 0.0:
            b_ = mid
        else:
            a_, fa = mid, fm
    p_h = 0.5 * (a_ + b_)

    dp = 1e-5
    alpha = [0.5 * _trace_of_primary(base, p) for p in (p_h - dp, p_h + dp)]
    dalpha_dp = (alpha[1] - alpha[0]) / (2.0 * dp)
    return p_h, dalpha_dp


def _hump_max_value(base: ModelParams, p: float) -> float:
    """Maximum of F over (0, 1/p); positive iff two interior roots exist (p < 1)."""
    q = base.with_p(p)
    upper = 1.0 / p
    us = np.linspace(upper * 1e-9, upper * (1.0 - 1e-12), SCAN_POINTS)
    Fs = interior_root_function(us, q)
    _, fmax = _hump_maximum(q, us, Fs)
    return fmax


def saddle_node_point(base: ModelParams, dp_tol: float = 1e-8) -> float:
    """The p value where the two interior equilibria collide (strong regime).

    Bisects the sign of the interior maximum of F: positive maximum means
    two roots, negative means none.  Valid for p < 1 where F < 0 at both
    ends of (0, 1/p).
    """
    if cooperation_regime(base) is not Regime.STRONG:
        raise NotApplicableError("saddle-node point exists only under strong cooperation")
    hi = 1.0 - 1e-9
    if _hump_max_value(base, hi) <= 0.0:
        raise NoBracketError("no two-equilibria range found below p = 1")
    lo = hi
    step = 0.05
    while lo > 1e-6:
        lo = max(lo - step, 1e-6)
        if _hump_max_value(base, lo) < 0.0:
            break
        step *= 2.0
    else:
        raise NoBracketError("interior maximum stays positive down to p = 0")
    fa = _hump_max_value(base, lo)
    while hi - lo > dp_tol:
        mid = 0.5 * (lo + hi)
        fm = _hump_max_value(base, mid)
        if fa * fm <= 0.0:
            hi = mid
        else:
            lo, fa = mid, fm
    return 0.5 * (lo + hi)


def first_lyapunov(q: ModelParams, p_hopf: float) -> float:
    """First Lyapunov coefficient of the Hopf normal form at the primary
    equilibrium; negative means supercritical (stable bifurcating cycle).

    The system is translated to the equilibrium and the linear part is
    brought to [[0, -w], [w, 0]] with w = sqrt(det J); the standard planar
    cubic-coefficient formula is then evaluated from the exact second and
    third partial derivatives of the vector field.
    """
    if abs(q.p - p_hopf) > 1e-6:
        q = q.with_p(p_hopf)
    eq = primary_equilibrium(q)
    if eq is None:
        raise NotAtHopfError("no primary interior equilibrium at the requested p")
    if abs(eq.trace) > 1e-6:
        raise NotAtHopfError(f"trace {eq.trace:.3e} is not at the Hopf tolerance 1e-6")
    if eq.det <= 0.0:
        raise NotAtHopfError("Hopf point requires det J > 0")
    J = jacobian_uv(eq.u, eq.v, q)
    omega = math.sqrt(eq.det)
    qvec = np.array([J[0, 1], 1j * omega - J[0, 0]])
    T = np.column_stack([qvec.real, -qvec.imag])
    Ti = np.linalg.inv(T)

    H = hessians(eq.u, eq.v, q)
    C = third_partials(eq.u, eq.v, q)
    Ht = np.einsum("ik,kmn,ma,nb->iab", Ti, H, T, T)
    Ct = np.einsum("ik,kmnq,ma,nb,qc->iabc", Ti, C, T, T, T)
    fxx, fxy, fyy = Ht[0, 0, 0], Ht[0, 0, 1], Ht[0, 1, 1]
    gxx, gxy, gyy = Ht[1, 0, 0], Ht[1, 0, 1], Ht[1, 1, 1]
    cubic = Ct[0, 0, 0, 0] + Ct[0, 0, 1, 1] + Ct[1, 0, 0, 1] + Ct[1, 1, 1, 1]
    mixed = (fxy * (fxx + fyy) - gxy * (gxx + gyy) - fxx * gxx + fyy * gyy)
    return cubic / 16.0 + mixed / (16.0 * omega)


def thresholds(base: ModelParams) -> BifurcationThresholds:
    """Bundle the bifurcation landmarks for a parameter family in p."""
    p_h, _ = hopf_point(base)
    regime = cooperation_regime(base)
    p_sn = saddle_node_point(base) if regime is Regime.STRONG else None
    p_top = _p_at_utop(base)
    lyap = first_lyapunov(base.with_p(p_h), p_h)
    return BifurcationThresholds(p_h, p_sn, p_top, lyap)


def _p_at_utop(base: ModelParams) -> float:
    """p for which the primary equilibrium sits at the prey-nullcline top
    u = (a+1)/2."""
    utop = 0.5 * (base.a + 1.0)

    def resid(p):
        eq = primary_equilibrium(base.with_p(p))
        return None if eq is None else eq.u - utop

    ps = np.linspace(1e-3, 1.0 / base.a - 1e-9, 800)
    vals = [resid(p) for p in ps]
    for i in range(len(ps) - 1):
        vi, vj = vals[i], vals[i + 1]
        if vi is not None and vj is not None and vi * vj < 0.0:
            lo, hi, flo = ps[i], ps[i + 1], vi
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                fm = resid(mid)
                if flo * fm <= 0.0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            return 0.5 * (lo + hi)
    raise NoBracketError("no p places the primary equilibrium at u = (a+1)/2")
