"""Hydrodynamic field diagnostics: phase, velocity, circulation, nodes.

A wavefunction here is any callable mapping points (shape (..., 2)) to
complex amplitudes.  The probability velocity is the gradient of the
phase; around a nodal point the phase winds by an integer multiple of
2*pi, which these routines measure by principal-value phase unwrapping
(exactly integer-valued, no quadrature error).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LoopThroughNode, NodalPointSingular
from .model import ModelParams, VortexState, ansatz_value

__all__ = [
    "VortexCharge",
    "single_vortex",
    "single_vortex_evaluator",
    "ansatz_slice_evaluator",
    "phase_and_velocity",
    "circulation",
    "plaquette_winding_map",
    "find_nodes",
]

AMPLITUDE_FLOOR = 1e-300  # below this the phase is considered undefined


@dataclass(frozen=True)
class VortexCharge:
    """Detected nodal point with its integer winding number (+-1 here)."""

    position: tuple[float, float]
    charge: int


def single_vortex(alpha: float, node, sign: int, r):
    """Single-vortex wavefunction: linear zero at `node`, Gaussian envelope.

    value = [(x - X) + i*sign*(y - Y)] * exp(-alpha*(x^2 + y^2)/2).
    The envelope is real and centred at the origin, so it normalizes the
    state without contributing phase or circulation.
    """
    r = np.asarray(r, dtype=np.float64)
    x = r[..., 0]
    y = r[..., 1]
    linear = (x - node[0]) + 1j * sign * (y - node[1])
    return linear * np.exp(-0.5 * alpha * (x * x + y * y))


def single_vortex_evaluator(alpha: float, node, sign: int):
    """Closure over single_vortex for the evaluator-based diagnostics."""

    def evaluate(r):
        return single_vortex(alpha, node, sign, r)

    return evaluate


def ansatz_slice_evaluator(
    params: ModelParams, state: VortexState, fixed_point, particle: int = 1
):
    """One-particle slice of the two-particle state at a frozen partner point."""
    fixed = np.asarray(fixed_point, dtype=np.float64)

    def evaluate(r):
        r = np.asarray(r, dtype=np.float64)
        frozen = np.broadcast_to(fixed, r.shape)
        if particle == 1:
            return ansatz_value(params, state, r, frozen)
        return ansatz_value(params, state, frozen, r)

    return evaluate


def phase_and_velocity(evaluator, r, step: float = 1e-6):
    """Principal-value phase and probability velocity u = grad(phase).

    The gradient is computed as Im(grad(psi)/psi) with central finite
    differences of the complex amplitude, which avoids branch-cut jumps
    of the raw phase.
    """
    r = np.asarray(r, dtype=np.float64)
    value = complex(evaluator(r))
    if abs(value) < AMPLITUDE_FLOOR:
        raise NodalPointSingular(f"|psi| = {abs(value)} at {tuple(r)}; phase undefined")
    phase = math.atan2(value.imag, value.real)
    grad = np.empty(2, dtype=np.complex128)
    for axis in range(2):
        fwd = r.copy()
        bwd = r.copy()
        fwd[axis] += step
        bwd[axis] -= step
        grad[axis] = (complex(evaluator(fwd)) - complex(evaluator(bwd))) / (2.0 * step)
    velocity = np.imag(grad / value)
    return phase, velocity


def _principal(delta: float) -> float:
    """Reduce a phase difference into (-pi, pi]."""
    out = math.fmod(delta + math.pi, 2.0 * math.pi)
    if out <= 0.0:
        out += 2.0 * math.pi
    return out - math.pi


def _phase_at(evaluator, point) -> float:
    value = complex(evaluator(np.asarray(point, dtype=np.float64)))
    if abs(value) < AMPLITUDE_FLOOR:
        raise LoopThroughNode(f"loop sample at {tuple(point)} hits a nodal point")
    return math.atan2(value.imag, value.real)


def _unwrapped_difference(evaluator, p0, p1, phase0, phase1, depth: int = 48) -> float:
    """Phase increment along a segment, bisecting until each jump < pi/2."""
    delta = _principal(phase1 - phase0)
    if abs(delta) <= 0.5 * math.pi:
        return delta
    if depth == 0:
        raise LoopThroughNode(
            f"phase jump stays ambiguous between {tuple(p0)} and {tuple(p1)}"
        )
    mid = 0.5 * (np.asarray(p0) + np.asarray(p1))
    phase_mid = _phase_at(evaluator, mid)
    return _unwrapped_difference(
        evaluator, p0, mid, phase0, phase_mid, depth - 1
    ) + _unwrapped_difference(evaluator, mid, p1, phase_mid, phase1, depth - 1)


def circulation(evaluator, loop) -> float:
    """Line integral of the phase gradient around a closed polyline.

    Equals 2*pi times the total enclosed winding; segments are bisected
    adaptively so every accumulated jump is unambiguous.  The loop closes
    itself if the last vertex differs from the first.
    """
    loop = np.asarray(loop, dtype=np.float64)
    if loop.ndim != 2 or loop.shape[1] != 2 or loop.shape[0] < 3:
        raise ValueError("loop must be an (n, 2) polyline with n >= 3")
    if not np.allclose(loop[0], loop[-1]):
        loop = np.vstack([loop, loop[0]])
    phases = [_phase_at(evaluator, p) for p in loop]
    total = 0.0
    for i in range(len(loop) - 1):
        total += _unwrapped_difference(
            evaluator, loop[i], loop[i + 1], phases[i], phases[i + 1]
        )
    return total


def plaquette_winding_map(evaluator, box, grid_n: int = 256) -> np.ndarray:
    """Integer winding of every grid plaquette over the box.

    box = (xmin, xmax, ymin, ymax).  Summing the map reproduces the
    boundary circulation / 2*pi exactly (interior edges telescope).
    """
    xmin, xmax, ymin, ymax = box
    xs = np.linspace(xmin, xmax, grid_n + 1)
    ys = np.linspace(ymin, ymax, grid_n + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    values = evaluator(np.stack([gx, gy], axis=-1))
    phases = np.angle(values)

    def pv(diff):
        return (diff + math.pi) % (2.0 * math.pi) - math.pi

    # counterclockwise around each plaquette: right, up, left, down edges
    d_right = pv(phases[1:, :-1] - phases[:-1, :-1])
    d_up = pv(phases[1:, 1:] - phases[1:, :-1])
    d_left = pv(phases[:-1, 1:] - phases[1:, 1:])
    d_down = pv(phases[:-1, :-1] - phases[:-1, 1:])
    winding = (d_right + d_up + d_left + d_down) / (2.0 * math.pi)
    return np.rint(winding).astype(np.int64)


def _refine_node(evaluator, cell, charge: int, tol: float):
    """Shrink a winding-carrying cell by quadrisection until below tol."""
    xmin, xmax, ymin, ymax = cell
    while max(xmax - xmin, ymax - ymin) > tol:
        xm = 0.5 * (xmin + xmax)
        ym = 0.5 * (ymin + ymax)
        quads = [
            (xmin, xm, ymin, ym),
            (xm, xmax, ymin, ym),
            (xmin, xm, ym, ymax),
            (xm, xmax, ym, ymax),
        ]
        chosen = None
        for quad in quads:
            sub = plaquette_winding_map(evaluator, quad, grid_n=1)
            if sub[0, 0] == charge:
                chosen = quad
                break
        if chosen is None:
            # winding straddles a sub-edge; fall back to the smallest |psi|^2
            centers = [
                (0.5 * (q[0] + q[1]), 0.5 * (q[2] + q[3])) for q in quads
            ]
            dens = [abs(complex(evaluator(np.array(c)))) for c in centers]
            chosen = quads[int(np.argmin(dens))]
        xmin, xmax, ymin, ymax = chosen
    return 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)


def find_nodes(evaluator, box, grid_n: int = 256, tol: float = 1e-10):
    """Locate nodal points and their charges inside a search box.

    Scans plaquette windings on a grid_n x grid_n mesh, then refines each
    nonzero cell by bisection in both axes down to `tol` in position.
    Returns a (possibly empty) list of VortexCharge.
    """
    xmin, xmax, ymin, ymax = box
    winding = plaquette_winding_map(evaluator, box, grid_n)
    dx = (xmax - xmin) / grid_n
    dy = (ymax - ymin) / grid_n
    nodes = []
    for i, j in zip(*np.nonzero(winding)):
        charge = int(winding[i, j])
        cell = (
            xmin + i * dx,
            xmin + (i + 1) * dx,
            ymin + j * dy,
            ymin + (j + 1) * dy,
        )
        x_node, y_node = _refine_node(evaluator, cell, charge, tol)
        nodes.append(VortexCharge(position=(x_node, y_node), charge=charge))
    nodes.sort(key=lambda nd: nd.position)
    return nodes
