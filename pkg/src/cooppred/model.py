"""Right-hand sides, Jacobians, nullclines and the cooperation regime split.

Everything here is a pure function of (state, parameters); densities and
parameters are plain floats, matrices are 2x2 numpy arrays.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError
from .params import ModelParams, State

__all__ = [
    "rhs", "rhs_uv", "jacobian", "jacobian_uv",
    "nullcline_prey", "nullcline_predator", "predator_nullcline_residual",
    "Regime", "cooperation_regime", "hessians", "third_partials",
]

REGIME_TOL = 1e-12  # relative split tolerance; gates analysis paths only


def rhs_uv(u: float, v: float, q: ModelParams):
    """Time derivatives (du/dt, dv/dt) at densities (u, v)."""
    du = q.r * u * (1.0 - u) * (u - q.a) - (1.0 + q.c * v) * u * v
    dv = q.m * v * (q.p * u * (1.0 + q.c * v) - 1.0)
    return du, dv


def rhs(s: State, q: ModelParams):
    return rhs_uv(s.u, s.v, q)


def jacobian_uv(u: float, v: float, q: ModelParams) -> np.ndarray:
    """Exact Jacobian of the vector field at an arbitrary state.

    On an interior equilibrium this reduces to the usual equilibrium form
    [[r u (1+a-2u), -2cuv - u], [m p v (1+cv), m p c u v]].
    """
    r, a, c, m, p = q.r, q.a, q.c, q.m, q.p
    j11 = r * (-3.0 * u * u + 2.0 * (1.0 + a) * u - a) - v * (1.0 + c * v)
    j12 = -u * (1.0 + 2.0 * c * v)
    j21 = m * p * v * (1.0 + c * v)
    j22 = m * (p * u * (1.0 + c * v) - 1.0) + m * p * c * u * v
    return np.array([[j11, j12], [j21, j22]])


def jacobian(s: State, q: ModelParams) -> np.ndarray:
    return jacobian_uv(s.u, s.v, q)


def nullcline_prey(u: float, q: ModelParams) -> float:
    """Prey nullcline v = f(u): nonnegative root of c v^2 + v = r(1-u)(u-a).

    Written as 2w / (1 + sqrt(1 + 4cw)) so the c -> 0 limit v = w is exact
    and there is no subtractive cancellation.
    """
    if u < q.a or u > 1.0:
        raise DomainError(f"prey nullcline defined on [a, 1], got u={u}")
    w = q.r * (1.0 - u) * (u - q.a)
    return 2.0 * w / (1.0 + math.sqrt(1.0 + 4.0 * q.c * w))


def nullcline_predator(u: float, q: ModelParams) -> float:
    """Predator nullcline v = g(u) = (1 - pu) / (cpu) on 0 < u < 1/p."""
    if u <= 0.0 or u >= 1.0 / q.p:
        raise DomainError(f"predator nullcline defined on (0, 1/p), got u={u}")
    return (1.0 - q.p * u) / (q.c * q.p * u)


def predator_nullcline_residual(u: float, v: float, q: ModelParams) -> float:
    """Signed residual p u (1 + c v) - 1; zero exactly on the predator nullcline."""
    return q.p * u * (1.0 + q.c * v) - 1.0


class Regime(enum.Enum):
    WEAK = "weak"
    STRONG = "strong"
    CRITICAL = "critical"


def cooperation_regime(q: ModelParams) -> Regime:
    """Split at c = 1/(r(1-a)), which controls the interior equilibrium count."""
    threshold = 1.0 / (q.r * (1.0 - q.a))
    if abs(q.c - threshold) <= REGIME_TOL * max(abs(q.c), threshold):
        return Regime.CRITICAL
    return Regime.WEAK if q.c < threshold else Regime.STRONG


def hessians(u: float, v: float, q: ModelParams) -> np.ndarray:
    """Second-derivative tensors H[i][ab] of both components; exact (polynomial field)."""
    r, a, c, m, p = q.r, q.a, q.c, q.m, q.p
    f_uu = r * (-6.0 * u + 2.0 * (1.0 + a))
    f_uv = -1.0 - 2.0 * c * v
    f_vv = -2.0 * c * u
    g_uv = m * p * (1.0 + 2.0 * c * v)
    g_vv = 2.0 * m * p * c * u
    return np.array([[[f_uu, f_uv], [f_uv, f_vv]],
                     [[0.0, g_uv], [g_uv, g_vv]]])


def third_partials(u: float, v: float, q: ModelParams) -> np.ndarray:
    """Third-derivative tensors C[i][abc]; constant in (u, v)."""
    r, c, m, p = q.r, q.c, q.m, q.p
    C = np.zeros((2, 2, 2, 2))
    C[0, 0, 0, 0] = -6.0 * r
    C[0, 0, 1, 1] = C[0, 1, 0, 1] = C[0, 1, 1, 0] = -2.0 * c
    C[1, 0, 1, 1] = C[1, 1, 0, 1] = C[1, 1, 1, 0] = 2.0 * m * p * c
    return C
