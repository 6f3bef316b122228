"""Benchmark the numba-compiled kernels against the pure numpy fallback.

Usage:
    python -m qvortex.benchmarks [--periods N] [--lam L]

Spawns one subprocess per path (the fallback is selected with
QVORTEX_NO_NUMBA=1) so each run measures a clean import, then prints a
comparison table.  `--run-child` is internal.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import subprocess
import sys
import time


def _workloads(periods: float, lam: float):
    from . import _kernels
    from .canonical import angular_frequency
    from .model import ModelParams, VortexState
    from . import dynamics

    params = ModelParams(lam=lam)
    omega = angular_frequency(params)
    t_end = periods * 2.0 * math.pi / omega
    state0 = VortexState(0.1, 0.0, -0.05, 0.12)

    def warmup():
        dynamics.integrate(params, state0, t_end / 1000.0)

    def trajectory():
        traj = dynamics.integrate(params, state0, t_end)
        return traj.n_accepted

    def rhs_only(n_eval: int = 20000):
        from .model import derived_coefficients

        c = derived_coefficients(params)
        q = state0.as_array()
        total = 0.0
        for _ in range(n_eval):
            qdot, _ = _kernels.flow_rhs(
                q, params.alpha, c.Lambda, c.Upsilon, c.mu, c.E, c.Gamma, 1e-12
            )
            total += qdot[0]
        return total

    return warmup, trajectory, rhs_only


def run_child(periods: float, lam: float) -> None:
    from . import _kernels

    warmup, trajectory, rhs_only = _workloads(periods, lam)
    t0 = time.perf_counter()
    warmup()
    warmup_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    steps = trajectory()
    trajectory_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    rhs_only()
    rhs_s = time.perf_counter() - t0

    print(
        json.dumps(
            {
                "numba": _kernels.NUMBA_ENABLED,
                "warmup_s": warmup_s,
                "trajectory_s": trajectory_s,
                "trajectory_steps": steps,
                "rhs_20k_s": rhs_s,
            }
        )
    )


def _spawn(no_numba: bool, periods: float, lam: float) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["QVORTEX_NO_NUMBA"] = "1"
    else:
        env.pop("QVORTEX_NO_NUMBA", None)
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "qvortex.benchmarks",
            "--run-child",
            "--periods",
            str(periods),
            "--lam",
            str(lam),
        ],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--periods", type=float, default=50.0)
    parser.add_argument("--lam", type=float, default=0.25)
    parser.add_argument("--run-child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.run_child:
        run_child(args.periods, args.lam)
        return 0

    results = {}
    for label, no_numba in [("numba", False), ("numpy", True)]:
        results[label] = _spawn(no_numba, args.periods, args.lam)
    if not results["numba"]["numba"]:
        print("note: numba unavailable; both rows ran the numpy path")

    print(f"\nworkload: {args.periods:g} periods at lam={args.lam:g}, plus 20k RHS calls")
    print(f"{'path':<8} {'warmup[s]':>10} {'trajectory[s]':>14} {'steps':>8} {'rhs 20k[s]':>11}")
    for label in ("numba", "numpy"):
        row = results[label]
        print(
            f"{label:<8} {row['warmup_s']:>10.3f} {row['trajectory_s']:>14.3f} "
            f"{row['trajectory_steps']:>8d} {row['rhs_20k_s']:>11.3f}"
        )
    if results["numpy"]["trajectory_s"] > 0:
        speedup = results["numpy"]["trajectory_s"] / results["numba"]["trajectory_s"]
        print(f"\ntrajectory speedup (numpy / numba): {speedup:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
