"""Command-line front end.

Subcommands: simulate, validate, entropy, canonical, nodes.  All take
--config (TOML, see config.py), --out, --seed, --jobs.  Data files are
CSV with 17-significant-digit decimals (bit round-trip safe) and carry
no timestamps, so identical configs produce byte-identical output; each
run also writes a JSON manifest (config echo, statistics, and the only
timestamp field).

Exit codes: 0 success, 1 validation failure, 2 config error,
3 integration/kinetic-degeneracy failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import dynamics
from .canonical import angular_frequency, canonical_flow, to_canonical
from .config import RunConfig, load_config
from .entanglement import entropy_sweep
from .errors import (
    ConfigError,
    DegenerateDenominator,
    NonPositiveE,
    QvortexError,
    SingularSymplecticForm,
    StepSizeUnderflow,
)
from .fields import ansatz_slice_evaluator, find_nodes, plaquette_winding_map, single_vortex_evaluator
from .model import ModelParams, VortexState
from .validation import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else str(v) for v in row])


def _write_manifest(path: Path, command: str, config: RunConfig, seed: int, payload: dict) -> None:
    manifest = {
        "command": command,
        "seed": seed,
        "config": config.raw,
        "timestamp_utc": datetime.now(timezone.utc).isoformat(),
    }
    manifest.update(payload)
    with open(path, "w") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True, default=_json_default)
        handle.write("\n")


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _error(kind: str, message: str) -> None:
    sys.stderr.write(f"qvortex: error: {kind}: {message}\n")


def cmd_simulate(config: RunConfig, out: Path, seed: int, jobs: int) -> int:
    if config.integrator.t_end is None:
        raise ConfigError("[integrator] t_end is required for simulate")
    traj = dynamics.integrate(
        config.params,
        config.initial,
        config.integrator.t_end,
        rtol=config.integrator.rtol,
        atol=config.integrator.atol,
        initial_step=config.integrator.initial_step,
        max_steps=config.integrator.max_steps,
    )
    rows = [
        (
            float(traj.times[i]),
            float(traj.states[i, 0]),
            float(traj.states[i, 1]),
            float(traj.states[i, 2]),
            float(traj.states[i, 3]),
            float(traj.energy[i]),
            float(traj.s1[i]),
            float(traj.s2[i]),
            float(traj.energy_drift[i]),
        )
        for i in range(len(traj))
    ]
    _write_csv(
        out / "trajectory.csv",
        ["t", "X1", "Y1", "X2", "Y2", "H", "s1", "s2", "energy_drift"],
        rows,
    )
    _write_manifest(
        out / "manifest.json",
        "simulate",
        config,
        seed,
        {
            "integrator_stats": {
                "n_accepted": traj.n_accepted,
                "n_rejected": traj.n_rejected,
                "n_rhs_evaluations": traj.n_rhs,
            },
            "invariant_summary": {
                "max_energy_drift": traj.max_energy_drift,
                "max_s1_drift": float(np.abs(traj.s1 - traj.s1[0]).max()),
                "max_s2_drift": float(np.abs(traj.s2 - traj.s2[0]).max()),
            },
        },
    )
    return EXIT_OK


def cmd_validate(config: RunConfig, out: Path, seed: int, jobs: int) -> int:
    report = run_validation(seed=seed, draws=config.validate_draws, jobs=jobs)
    with open(out / "validation.json", "w") as handle:
        json.dump(report.to_dict(), handle, indent=2, sort_keys=True, default=_json_default)
        handle.write("\n")
    for result in report.results:
        tag = "PASS" if result.passed else "FAIL"
        kind = "asserted" if result.asserted else "reported"
        print(f"[{tag}] ({kind}) {result.name}: residual {result.residual:.3e}")
    if not report.all_asserted_passed:
        _error("validate", "one or more asserted checks failed (see validation.json)")
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_entropy(config: RunConfig, out: Path, seed: int, jobs: int) -> int:
    grid = config.sweep.lambda_grid
    if grid is None:
        grid = np.linspace(0.0, 0.499, 200)
    sweep = entropy_sweep(config.params, config.initial, grid)
    rows = [
        (
            float(sweep.lam_grid[i]),
            float(sweep.entropy_orthonormal[i]),
            float(sweep.entropy_gram[i]),
            float(sweep.difference[i]),
        )
        for i in range(sweep.lam_grid.size)
    ]
    _write_csv(out / "entropy.csv", ["lambda", "S_paper", "S_gram", "difference"], rows)
    _write_manifest(
        out / "entropy_summary.json",
        "entropy",
        config,
        seed,
        {
            "stationary_point_estimate": sweep.stationary_point,
            "tail_lambda": sweep.tail_lam,
            "tail_slope": sweep.tail_slope,
        },
    )
    return EXIT_OK


def cmd_canonical(config: RunConfig, out: Path, seed: int, jobs: int) -> int:
    grid = config.sweep.lambda_grid
    if grid is None or grid.size == 0:
        raise ConfigError("[sweep] lambda grid is required for canonical")
    amplitude = config.canonical.amplitude
    periods = config.canonical.periods

    def run_one(lam: float):
        params = ModelParams(
            lam=lam,
            alpha=config.params.alpha,
            eps1=config.params.eps1,
            eps2=config.params.eps2,
            gamma1=config.params.gamma1,
            gamma2=config.params.gamma2,
        )
        omega = angular_frequency(params)
        t_end = periods * 2.0 * math.pi / omega
        traj = dynamics.integrate(
            params,
            VortexState(amplitude, 0.0, 0.0, 0.0),
            t_end,
            rtol=config.integrator.rtol,
            atol=config.integrator.atol,
        )
        cs0 = to_canonical(params, amplitude, 0.0)
        rows = []
        worst = 0.0
        for k in range(len(traj)):
            cs_num = to_canonical(params, traj.states[k, 0], traj.states[k, 1])
            cs_exact = canonical_flow(params, cs0, traj.times[k])
            err = max(abs(cs_num.xi - cs_exact.xi), abs(cs_num.eta - cs_exact.eta))
            worst = max(worst, err)
            rows.append(
                (
                    float(lam),
                    float(traj.times[k]),
                    cs_exact.xi,
                    cs_exact.eta,
                    cs_num.xi,
                    cs_num.eta,
                    err,
                )
            )
        return omega, rows, worst

    lams = [float(v) for v in grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(run_one, lams))
    else:
        outputs = [run_one(lam) for lam in lams]

    freq_rows = [(lam, outputs[i][0]) for i, lam in enumerate(lams)]
    transport_rows = [row for _, rows, _ in outputs for row in rows]
    max_error = max(worst for _, _, worst in outputs)
    _write_csv(out / "frequency_table.csv", ["lambda", "omega"], freq_rows)
    _write_csv(
        out / "canonical_transport.csv",
        ["lambda", "t", "xi_analytic", "eta_analytic", "xi_integrated", "eta_integrated", "abs_error"],
        transport_rows,
    )
    _write_manifest(
        out / "manifest.json",
        "canonical",
        config,
        seed,
        {"max_transport_error": max_error, "lambda_grid": lams},
    )
    return EXIT_OK


def cmd_nodes(config: RunConfig, out: Path, seed: int, jobs: int) -> int:
    nodes_cfg = config.nodes
    if nodes_cfg.kind == "single":
        evaluator = single_vortex_evaluator(
            config.params.alpha, nodes_cfg.node, nodes_cfg.sign
        )
    else:
        evaluator = ansatz_slice_evaluator(
            config.params, config.initial, nodes_cfg.fixed_point, nodes_cfg.particle
        )
    detected = find_nodes(evaluator, nodes_cfg.box, nodes_cfg.grid_n)
    winding = plaquette_winding_map(evaluator, nodes_cfg.box, nodes_cfg.grid_n)
    _write_csv(
        out / "nodes.csv",
        ["x", "y", "charge"],
        [(n.position[0], n.position[1], n.charge) for n in detected],
    )
    nz = np.nonzero(winding)
    _write_csv(
        out / "winding_map.csv",
        ["i", "j", "winding"],
        [(int(i), int(j), int(winding[i, j])) for i, j in zip(*nz)],
    )
    _write_manifest(
        out / "manifest.json",
        "nodes",
        config,
        seed,
        {
            "n_nodes": len(detected),
            "total_winding": int(winding.sum()),
            "box": list(nodes_cfg.box),
            "grid_n": nodes_cfg.grid_n,
        },
    )
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "validate": cmd_validate,
    "entropy": cmd_entropy,
    "canonical": cmd_canonical,
    "nodes": cmd_nodes,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvortex",
        description="Reduced dynamics of two entangled pointlike quantum vortices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("simulate", "integrate a vortex trajectory and write CSV + manifest"),
        ("validate", "run the oracle/invariant suite and write a JSON report"),
        ("entropy", "sweep the entanglement weight and tabulate the entropy"),
        ("canonical", "compare integrated pinned-vortex motion with the exact rotation"),
        ("nodes", "scan a wavefunction for nodal points and windings"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized draws")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for sweeps")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](config, out, args.seed, args.jobs)
    except ConfigError as exc:
        _error("config", str(exc))
        return EXIT_CONFIG
    except (SingularSymplecticForm, StepSizeUnderflow, DegenerateDenominator, NonPositiveE) as exc:
        _error("integration", str(exc))
        return EXIT_INTEGRATION
    except QvortexError as exc:
        _error("runtime", str(exc))
        return EXIT_INTEGRATION


if __name__ == "__main__":
    sys.exit(main())
