"""Run configuration: a single TOML document with flat tables.

Schema (all tables optional unless a subcommand needs them; unknown keys
anywhere are hard errors so typos in physics parameters cannot slip
through):

    [model]       lambda (required), alpha, eps1, eps2, gamma1, gamma2
    [initial]     x1, y1, x2, y2
    [integrator]  t_end, rtol, atol, initial_step, max_steps
    [sweep]       lambda_grid = [...]  (or lambda_min/lambda_max/lambda_count)
                  alpha_list = [...]
    [canonical]   amplitude, periods
    [nodes]       kind = "single" | "ansatz_slice", node = [x, y], sign,
                  fixed_point = [x, y], particle, box = [xmin, xmax, ymin, ymax],
                  grid_n
    [validate]    draws

See configs/ in the repository for working examples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .errors import ConfigError, InvalidParams
from .model import ModelParams, VortexState

__all__ = ["RunConfig", "IntegratorConfig", "SweepConfig", "NodesConfig",
           "CanonicalConfig", "load_config"]


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: Optional[float] = None
    rtol: float = 1e-10
    atol: float = 1e-12
    initial_step: Optional[float] = None
    max_steps: int = 500_000


@dataclass(frozen=True)
class SweepConfig:
    lambda_grid: Optional[np.ndarray] = None
    alpha_list: tuple = (1.0,)


@dataclass(frozen=True)
class NodesConfig:
    kind: str = "single"
    node: tuple = (0.0, 0.0)
    sign: int = 1
    fixed_point: tuple = (0.0, 0.0)
    particle: int = 1
    box: tuple = (-3.0, 3.0, -3.0, 3.0)
    grid_n: int = 256


@dataclass(frozen=True)
class CanonicalConfig:
    amplitude: float = 0.1
    periods: float = 3.0


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    initial: VortexState = VortexState(0.0, 0.0, 0.0, 0.0)
    integrator: IntegratorConfig = IntegratorConfig()
    sweep: SweepConfig = SweepConfig()
    nodes: NodesConfig = NodesConfig()
    canonical: CanonicalConfig = CanonicalConfig()
    validate_draws: int = 200
    raw: dict = field(default_factory=dict, compare=False)


_SCHEMA = {
    "model": {"lambda", "alpha", "eps1", "eps2", "gamma1", "gamma2"},
    "initial": {"x1", "y1", "x2", "y2"},
    "integrator": {"t_end", "rtol", "atol", "initial_step", "max_steps"},
    "sweep": {"lambda_grid", "lambda_min", "lambda_max", "lambda_count", "alpha_list"},
    "canonical": {"amplitude", "periods"},
    "nodes": {"kind", "node", "sign", "fixed_point", "particle", "box", "grid_n"},
    "validate": {"draws"},
}


def _check_unknown(doc: dict) -> None:
    for section, content in doc.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(content, dict):
            raise ConfigError(f"[{section}] must be a table, got {type(content).__name__}")
        unknown = set(content) - _SCHEMA[section]
        if unknown:
            raise ConfigError(
                f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}"
            )


def _number(section: dict, key: str, default=None, section_name: str = ""):
    if key not in section:
        if default is None:
            raise ConfigError(f"missing required key '{key}' in [{section_name}]")
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"[{section_name}] {key} must be a number, got {value!r}")
    return value


def _pair(section: dict, key: str, default, section_name: str):
    value = section.get(key, default)
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) for v in value)
    ):
        raise ConfigError(f"[{section_name}] {key} must be a pair of numbers")
    return tuple(float(v) for v in value)


def _lambda_grid(sweep: dict) -> Optional[np.ndarray]:
    explicit = "lambda_grid" in sweep
    ranged = any(k in sweep for k in ("lambda_min", "lambda_max", "lambda_count"))
    if explicit and ranged:
        raise ConfigError("[sweep] give either lambda_grid or lambda_min/max/count, not both")
    if explicit:
        grid = sweep["lambda_grid"]
        if not isinstance(grid, list) or not all(
            isinstance(v, (int, float)) for v in grid
        ):
            raise ConfigError("[sweep] lambda_grid must be a list of numbers")
        arr = np.asarray(grid, dtype=np.float64)
    elif ranged:
        lo = _number(sweep, "lambda_min", 0.0, "sweep")
        hi = _number(sweep, "lambda_max", 0.499, "sweep")
        count = sweep.get("lambda_count", 200)
        if not isinstance(count, int) or count < 2:
            raise ConfigError("[sweep] lambda_count must be an integer >= 2")
        arr = np.linspace(lo, hi, count)
    else:
        return None
    if arr.size == 0:
        raise ConfigError("[sweep] lambda grid is empty")
    if np.any(arr < 0.0) or np.any(arr >= 0.5):
        raise ConfigError("[sweep] lambda grid values must lie in [0, 0.5)")
    if arr.size > 1 and np.any(np.diff(arr) <= 0.0):
        raise ConfigError("[sweep] lambda grid must be strictly increasing")
    return arr


def load_config(path: str) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        with open(path, "rb") as handle:
            doc = tomllib.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse error in {path}: {exc}") from exc

    _check_unknown(doc)
    if "model" not in doc:
        raise ConfigError("missing required section [model]")
    model = doc["model"]
    try:
        params = ModelParams(
            lam=float(_number(model, "lambda", section_name="model")),
            alpha=float(_number(model, "alpha", 1.0, "model")),
            eps1=int(_number(model, "eps1", -1, "model")),
            eps2=int(_number(model, "eps2", 1, "model")),
            gamma1=int(_number(model, "gamma1", 1, "model")),
            gamma2=int(_number(model, "gamma2", -1, "model")),
        )
    except InvalidParams as exc:
        raise ConfigError(f"[model] {exc}") from exc

    initial_tbl = doc.get("initial", {})
    initial = VortexState(
        x1=float(_number(initial_tbl, "x1", 0.0, "initial")),
        y1=float(_number(initial_tbl, "y1", 0.0, "initial")),
        x2=float(_number(initial_tbl, "x2", 0.0, "initial")),
        y2=float(_number(initial_tbl, "y2", 0.0, "initial")),
    )

    integ_tbl = doc.get("integrator", {})
    t_end = integ_tbl.get("t_end")
    if t_end is not None:
        t_end = float(_number(integ_tbl, "t_end", section_name="integrator"))
        if t_end <= 0.0:
            raise ConfigError("[integrator] t_end must be > 0")
    max_steps = integ_tbl.get("max_steps", 500_000)
    if not isinstance(max_steps, int) or max_steps <= 0:
        raise ConfigError("[integrator] max_steps must be a positive integer")
    initial_step = integ_tbl.get("initial_step")
    integrator = IntegratorConfig(
        t_end=t_end,
        rtol=float(_number(integ_tbl, "rtol", 1e-10, "integrator")),
        atol=float(_number(integ_tbl, "atol", 1e-12, "integrator")),
        initial_step=None if initial_step is None else float(initial_step),
        max_steps=max_steps,
    )

    sweep_tbl = doc.get("sweep", {})
    alpha_list = sweep_tbl.get("alpha_list", [1.0])
    if not isinstance(alpha_list, list) or not alpha_list or not all(
        isinstance(v, (int, float)) and v > 0 for v in alpha_list
    ):
        raise ConfigError("[sweep] alpha_list must be a nonempty list of positive numbers")
    sweep = SweepConfig(
        lambda_grid=_lambda_grid(sweep_tbl),
        alpha_list=tuple(float(v) for v in alpha_list),
    )

    nodes_tbl = doc.get("nodes", {})
    kind = nodes_tbl.get("kind", "single")
    if kind not in ("single", "ansatz_slice"):
        raise ConfigError(f"[nodes] kind must be 'single' or 'ansatz_slice', got {kind!r}")
    sign = int(_number(nodes_tbl, "sign", 1, "nodes"))
    if sign not in (-1, 1):
        raise ConfigError("[nodes] sign must be +1 or -1")
    particle = nodes_tbl.get("particle", 1)
    if particle not in (1, 2):
        raise ConfigError("[nodes] particle must be 1 or 2")
    box = nodes_tbl.get("box", [-3.0, 3.0, -3.0, 3.0])
    if (
        not isinstance(box, list)
        or len(box) != 4
        or not all(isinstance(v, (int, float)) for v in box)
        or box[0] >= box[1]
        or box[2] >= box[3]
    ):
        raise ConfigError("[nodes] box must be [xmin, xmax, ymin, ymax] with min < max")
    grid_n = nodes_tbl.get("grid_n", 256)
    if not isinstance(grid_n, int) or grid_n < 2:
        raise ConfigError("[nodes] grid_n must be an integer >= 2")
    nodes = NodesConfig(
        kind=kind,
        node=_pair(nodes_tbl, "node", (0.0, 0.0), "nodes"),
        sign=sign,
        fixed_point=_pair(nodes_tbl, "fixed_point", (0.0, 0.0), "nodes"),
        particle=particle,
        box=tuple(float(v) for v in box),
        grid_n=grid_n,
    )

    canon_tbl = doc.get("canonical", {})
    amplitude = float(_number(canon_tbl, "amplitude", 0.1, "canonical"))
    periods = float(_number(canon_tbl, "periods", 3.0, "canonical"))
    if amplitude <= 0.0 or periods <= 0.0:
        raise ConfigError("[canonical] amplitude and periods must be > 0")
    canonical = CanonicalConfig(amplitude=amplitude, periods=periods)

    validate_tbl = doc.get("validate", {})
    draws = validate_tbl.get("draws", 200)
    if not isinstance(draws, int) or draws < 1:
        raise ConfigError("[validate] draws must be a positive integer")

    return RunConfig(
        params=params,
        initial=initial,
        integrator=integrator,
        sweep=sweep,
        nodes=nodes,
        canonical=canonical,
        validate_draws=draws,
        raw=doc,
    )
