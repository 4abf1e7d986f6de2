"""Built-in benchmark instances.

Three families: the fixed 16-arm benchmark ("appendix-f-k16"), and two
parametrized 5-arm families that vary the reward gap ("reward-gap") or
the dueling gap ("dueling-gap") while holding the other side fixed.
"""

from __future__ import annotations

import re
import warnings

import numpy as np

from .core import BanditInstance, validate_instance

__all__ = [
    "builtin_instance",
    "resolve_instance",
    "list_builtin_instances",
    "REWARD_GAP_GRID",
    "DUELING_GAP_GRID",
]

REWARD_GAP_GRID = (0.06, 0.11, 0.16, 0.21)
DUELING_GAP_GRID = (0.03, 0.05, 0.07, 0.09, 0.11)

_K16_MU = [
    0.86, 0.80, 0.75, 0.70, 0.65, 0.60, 0.55, 0.50,
    0.45, 0.40, 0.35, 0.30, 0.25, 0.20, 0.15, 0.10,
]

_K16_NU = [
    [0.50, 0.54, 0.57, 0.60, 0.63, 0.65, 0.69, 0.71, 0.73, 0.76, 0.78, 0.82, 0.86, 0.91, 0.95, 0.98],
    [0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.67, 0.70, 0.74, 0.76, 0.79, 0.81, 0.84, 0.87, 0.89, 0.92],
    [0.43, 0.46, 0.50, 0.54, 0.58, 0.60, 0.63, 0.66, 0.69, 0.72, 0.76, 0.79, 0.83, 0.85, 0.88, 0.91],
    [0.40, 0.42, 0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.66, 0.69, 0.72, 0.76, 0.79, 0.82, 0.85, 0.88],
    [0.37, 0.39, 0.42, 0.46, 0.50, 0.54, 0.56, 0.59, 0.63, 0.66, 0.69, 0.72, 0.76, 0.78, 0.82, 0.86],
    [0.35, 0.36, 0.40, 0.42, 0.46, 0.50, 0.54, 0.57, 0.59, 0.63, 0.67, 0.70, 0.73, 0.76, 0.79, 0.82],
    [0.31, 0.33, 0.37, 0.39, 0.44, 0.46, 0.50, 0.54, 0.58, 0.61, 0.64, 0.68, 0.71, 0.72, 0.75, 0.79],
    [0.29, 0.30, 0.34, 0.36, 0.41, 0.43, 0.46, 0.50, 0.54, 0.57, 0.59, 0.62, 0.65, 0.68, 0.72, 0.76],
    [0.27, 0.26, 0.31, 0.34, 0.37, 0.41, 0.42, 0.46, 0.50, 0.54, 0.58, 0.61, 0.63, 0.66, 0.69, 0.73],
    [0.24, 0.24, 0.28, 0.31, 0.34, 0.37, 0.39, 0.43, 0.46, 0.50, 0.54, 0.56, 0.59, 0.62, 0.66, 0.69],
    [0.22, 0.21, 0.24, 0.28, 0.31, 0.33, 0.36, 0.41, 0.42, 0.46, 0.50, 0.54, 0.56, 0.58, 0.61, 0.65],
    [0.18, 0.19, 0.21, 0.24, 0.28, 0.30, 0.32, 0.38, 0.39, 0.44, 0.46, 0.50, 0.54, 0.57, 0.58, 0.62],
    [0.14, 0.16, 0.17, 0.21, 0.24, 0.27, 0.29, 0.35, 0.37, 0.41, 0.44, 0.46, 0.50, 0.54, 0.56, 0.59],
    [0.09, 0.13, 0.15, 0.18, 0.22, 0.24, 0.28, 0.32, 0.34, 0.38, 0.42, 0.43, 0.46, 0.50, 0.54, 0.56],
    [0.05, 0.11, 0.12, 0.15, 0.18, 0.21, 0.25, 0.28, 0.31, 0.34, 0.39, 0.42, 0.44, 0.46, 0.50, 0.54],
    [0.02, 0.08, 0.09, 0.12, 0.14, 0.18, 0.21, 0.24, 0.27, 0.31, 0.35, 0.38, 0.41, 0.44, 0.46, 0.50],
]

# 5-arm dueling matrix used by the reward-gap family (0.03 step)
_K5_NU = [
    [0.50, 0.53, 0.56, 0.59, 0.62],
    [0.47, 0.50, 0.53, 0.56, 0.59],
    [0.44, 0.47, 0.50, 0.53, 0.56],
    [0.41, 0.44, 0.47, 0.50, 0.53],
    [0.38, 0.41, 0.44, 0.47, 0.50],
]

_K5_MU = [0.9, 0.84, 0.78, 0.72, 0.66]


def _checked(inst: BanditInstance, name: str) -> BanditInstance:
    report = validate_instance(inst)
    if not report.ok:
        raise ValueError(f"builtin instance {name!r} failed validation: {report.violations}")
    return inst


def builtin_instance(name: str, delta_param: float | None = None) -> BanditInstance:
    """Build a named instance; the gap families require a delta parameter.

    A delta off the standard sweep grid is accepted with a warning; values
    that would push a mean or a probability out of (0, 1) are rejected.
    """
    if name == "appendix-f-k16":
        return _checked(BanditInstance(K=16, mu=np.array(_K16_MU), nu=np.array(_K16_NU)), name)
    if name == "reward-gap":
        if delta_param is None:
            raise ValueError("reward-gap requires a gap parameter")
        if delta_param <= 0 or delta_param >= 0.225:
            raise ValueError(f"reward-gap delta {delta_param} outside (0, 0.225)")
        if delta_param not in REWARD_GAP_GRID:
            warnings.warn(f"reward-gap delta {delta_param} is off the standard grid {REWARD_GAP_GRID}")
        mu = 0.9 - delta_param * np.arange(5)
        return _checked(BanditInstance(K=5, mu=mu, nu=np.array(_K5_NU)), name)
    if name == "dueling-gap":
        if delta_param is None:
            raise ValueError("dueling-gap requires a gap parameter")
        if delta_param <= 0 or delta_param >= 0.125:
            raise ValueError(f"dueling-gap delta {delta_param} outside (0, 0.125)")
        if delta_param not in DUELING_GAP_GRID:
            warnings.warn(f"dueling-gap delta {delta_param} is off the standard grid {DUELING_GAP_GRID}")
        i = np.arange(5)
        nu = 0.5 + delta_param * (i[None, :] - i[:, None])
        return _checked(BanditInstance(K=5, mu=np.array(_K5_MU), nu=nu), name)
    raise KeyError(f"unknown builtin instance {name!r}")


def list_builtin_instances() -> list[str]:
    return ["appendix-f-k16", "reward-gap", "dueling-gap"]


_PARAM_RE = re.compile(r"^([a-z\-]+)\(([-+0-9.eE]+)\)$")


def resolve_instance(spec: str, delta_param: float | None = None) -> BanditInstance:
    """Resolve an instance reference: builtin name, ``name(delta)``, or a
    file path."""
    m = _PARAM_RE.match(spec)
    if m:
        return builtin_instance(m.group(1), float(m.group(2)))
    if spec in list_builtin_instances():
        return builtin_instance(spec, delta_param)
    from .core import load_instance

    return load_instance(spec)
