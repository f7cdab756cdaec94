"""Bifurcation, Turing-pattern and two-delay analysis toolkit for a
predator-prey model with hunting cooperation and an Allee effect in the prey.

Subpackages follow the analysis layers: `model` (vector field and
nullclines), `equilibria` (steady states, Hopf and saddle-node points,
Lyapunov coefficient), `phase` (orbits, invariant manifolds, connecting
orbits, basins), `turing` (diffusion-driven instability), `pde` (direct
simulation with and without delays), `delays` (stability switching curves
and double Hopf points), `normalform` (amplitude system and unfolding),
`cli` (scenario runner).
"""

from .params import (
    ModelParams, RawParams, DiffusionParams, DelayParams, State,
    nondimensionalize,
)
from .model import Regime, cooperation_regime, rhs, jacobian
from .kernels import backend

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "RawParams", "DiffusionParams", "DelayParams", "State",
    "nondimensionalize", "Regime", "cooperation_regime", "rhs", "jacobian",
    "backend", "__version__",
]
