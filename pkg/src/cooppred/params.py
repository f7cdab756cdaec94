"""Parameter containers and the plain-text key/value configuration format.

All parameter sets are immutable; analysis code derives variants with
`dataclasses.replace`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError, ParamError

__all__ = [
    "ModelParams", "RawParams", "DiffusionParams", "DelayParams", "State",
    "nondimensionalize", "read_config", "write_config",
    "model_params_from_config", "diffusion_params_from_config",
    "delay_params_from_config", "parse_profile",
]


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters (growth, Allee, cooperation, death, conversion)."""

    r: float
    a: float
    c: float
    m: float
    p: float

    def __post_init__(self):
        for name in ("r", "a", "c", "m", "p"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ParamError(f"{name} must be finite and positive, got {val}")
        if not self.a < 1.0:
            raise ParamError(f"Allee threshold must satisfy 0 < a < 1, got {self.a}")

    def with_p(self, p: float) -> "ModelParams":
        return replace(self, p=p)


@dataclass(frozen=True)
class RawParams:
    """Dimensional parameters of the original model."""

    r1: float
    K1: float
    a1: float
    b1: float
    c1: float
    p1: float
    m1: float

    def __post_init__(self):
        for name in ("r1", "K1", "a1", "b1", "c1", "p1", "m1"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ParamError(f"{name} must be finite and positive, got {val}")
        if not self.a1 < self.K1:
            raise ParamError(f"Allee threshold a1={self.a1} must be below K1={self.K1}")


@dataclass(frozen=True)
class DiffusionParams:
    """Diffusivities and domain scale; the spatial domain is (0, l*pi)."""

    d1: float
    d2: float
    l: float

    def __post_init__(self):
        for name in ("d1", "d2", "l"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ParamError(f"{name} must be finite and positive, got {val}")


@dataclass(frozen=True)
class DelayParams:
    """Prey maturation delay tau1 and predator gestation delay tau2."""

    tau1: float
    tau2: float

    def __post_init__(self):
        for name in ("tau1", "tau2"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0.0):
                raise ParamError(f"{name} must be finite and nonnegative, got {val}")


@dataclass(frozen=True)
class State:
    """A (prey, predator) density pair."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise ParamError(f"state must be finite, got ({self.u}, {self.v})")
        if self.u < 0.0 or self.v < 0.0:
            raise ParamError(f"densities must be nonnegative, got ({self.u}, {self.v})")


def nondimensionalize(raw: RawParams) -> ModelParams:
    """Map dimensional parameters to the dimensionless five-parameter set."""
    return ModelParams(
        r=raw.K1 * raw.r1,
        a=raw.a1 / raw.K1,
        c=raw.c1 / raw.b1**2,
        m=raw.m1,
        p=raw.b1 * raw.p1 * raw.K1 / raw.m1,
    )


# --- key/value configuration files ------------------------------------------
#
# One `name = value` per line, `#` starts a comment.  Values are floats,
# integers, or bare strings (task names, file names, init expressions).

def read_config(path) -> dict:
    text = Path(path).read_text()
    out: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'name = value', got {raw_line!r}")
        name, value = (part.strip() for part in line.split("=", 1))
        if not name:
            raise ConfigError(f"{path}:{lineno}: empty key")
        out[name] = _parse_value(value)
    return out


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def write_config(path, values: dict) -> None:
    lines = []
    for key, val in values.items():
        if isinstance(val, float):
            lines.append(f"{key} = {val:.17g}")
        else:
            lines.append(f"{key} = {val}")
    Path(path).write_text("\n".join(lines) + "\n")


def _require(cfg: dict, keys, kind) -> dict:
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ConfigError(f"{kind} requires keys {missing}")
    bad = [k for k in keys if not isinstance(cfg[k], (int, float))]
    if bad:
        raise ConfigError(f"{kind} keys {bad} must be numeric")
    return {k: float(cfg[k]) for k in keys}


def model_params_from_config(cfg: dict) -> ModelParams:
    vals = _require(cfg, ("r", "a", "c", "m", "p"), "ModelParams")
    return ModelParams(**vals)


def diffusion_params_from_config(cfg: dict) -> DiffusionParams:
    vals = _require(cfg, ("d1", "d2", "l"), "DiffusionParams")
    return DiffusionParams(**vals)


def delay_params_from_config(cfg: dict) -> DelayParams:
    vals = _require(cfg, ("tau1", "tau2"), "DelayParams")
    return DelayParams(**vals)


# Initial-profile expressions for PDE runs: sums of a constant and cosine
# terms, e.g. "0.6 + 0.1*cos(2*x)" or "0.08 - 0.02*cos(3*x)".
_TERM_RE = re.compile(
    r"^\s*(?P<coef>[+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)?\s*"
    r"(?:(?P<star>\*)?\s*cos\(\s*(?P<freq>\d*\.?\d+)?\s*\*?\s*x\s*\))?\s*$"
)


def parse_profile(expr: str):
    """Parse an init expression into (constant, [(amplitude, frequency), ...])."""
    text = expr.replace("-", "+-")
    const = 0.0
    waves = []
    for chunk in text.split("+"):
        if not chunk.strip():
            continue
        match = _TERM_RE.match(chunk)
        if not match or (match.group("coef") is None and match.group("freq") is None):
            raise ConfigError(f"cannot parse profile term {chunk!r} in {expr!r}")
        coef = float(match.group("coef")) if match.group("coef") not in (None, "", "-") else (
            -1.0 if match.group("coef") == "-" else 1.0)
        if "cos" in chunk:
            freq = float(match.group("freq")) if match.group("freq") else 1.0
            waves.append((coef, freq))
        else:
            const += coef
    return const, waves
