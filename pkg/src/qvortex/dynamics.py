"""First-order vortex dynamics from the velocity-linear Lagrangian.

The Lagrangian L = a(q).qdot - V(q) is degenerate (linear in the
velocities), so its Euler-Lagrange equations are first order:
F(q) qdot = grad V(q), with F_ij = d_i a_j - d_j a_i the curl of the
kinetic coefficients.  This module exposes the pieces (kinetic
coefficients, potential, two-form, velocity field) and an adaptive
embedded Runge-Kutta 4(5) integrator with per-step conservation
diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import (
    DegenerateDenominator,
    SingularSymplecticForm,
    StepSizeUnderflow,
)
from .model import (
    ModelParams,
    VortexState,
    derived_coefficients,
    geometry,
    reduced_hamiltonian,
)

__all__ = [
    "SymplecticForm",
    "Trajectory",
    "AntisymmetricReport",
    "DEFAULT_DET_TOL",
    "DEFAULT_MIN_KINETIC",
    "kinetic_coefficients",
    "potential_v",
    "symplectic_form",
    "velocity_field",
    "integrate",
    "fit_frequency",
    "antisymmetric_subspace_diagnostic",
]

# relative Pfaffian^2 threshold: |det F| < DET_TOL * ||F||_F^4 is singular
DEFAULT_DET_TOL = 1e-12
# guard on min(|E|, |Gamma|): below this the kinetic term is considered
# degenerate (entanglement weight above ~0.49875, within 1.25e-3 of 1/2)
DEFAULT_MIN_KINETIC = 2.5e-3


@dataclass(frozen=True)
class SymplecticForm:
    """Kinetic two-form F over (X1, Y1, X2, Y2); antisymmetric by construction."""

    matrix: np.ndarray

    @property
    def pfaffian(self) -> float:
        return float(_kernels.pfaffian4(self.matrix))

    @property
    def determinant(self) -> float:
        return self.pfaffian**2


@dataclass
class Trajectory:
    """Integrated vortex trajectory with per-step diagnostics."""

    times: np.ndarray
    states: np.ndarray  # (n, 4) rows (X1, Y1, X2, Y2)
    step_sizes: np.ndarray
    energy: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    energy_drift: np.ndarray  # |H - H0| / |H0|
    n_accepted: int
    n_rejected: int
    n_rhs: int
    params: ModelParams

    def __len__(self) -> int:
        return len(self.times)

    def state(self, i: int) -> VortexState:
        return VortexState.from_array(self.states[i])

    @property
    def final_state(self) -> VortexState:
        return self.state(len(self) - 1)

    @property
    def max_energy_drift(self) -> float:
        return float(np.max(self.energy_drift))


def _coeffs(params: ModelParams):
    c = derived_coefficients(params)
    return c.Lambda, c.Upsilon, c.mu, c.E, c.Gamma


def _check_kinetic(params: ModelParams, min_kinetic: float) -> None:
    c = derived_coefficients(params)
    if min(abs(c.E), abs(c.Gamma)) < min_kinetic:
        raise SingularSymplecticForm(
            "degenerate kinetics near lam=1/2: "
            f"|E| = {abs(c.E):.3e} < {min_kinetic:.3e} at lam = {params.lam}"
        )


def kinetic_coefficients(params: ModelParams, state: VortexState) -> np.ndarray:
    """Coefficient vector a(q) with L(q, v) = a(q).v - V(q)."""
    c = derived_coefficients(params)
    a1, a2, d = geometry(params, state.x1, state.y1, state.x2, state.y2)
    if d <= 0.0:
        raise DegenerateDenominator(f"common denominator D = {d} <= 0")
    return np.array(
        [
            c.E * a2 * state.y1,
            -c.E * a2 * state.x1,
            c.Gamma * a1 * state.y2,
            -c.Gamma * a1 * state.x2,
        ]
    ) / d


def potential_v(params: ModelParams, state: VortexState) -> float:
    """Potential of the first-order flow; identical to the reduced Hamiltonian."""
    return reduced_hamiltonian(params, state)


def _flow_terms(params: ModelParams, state: VortexState):
    lam_c, ups_c, mu_c, e_c, gam_c = _coeffs(params)
    f_form, grad_v, d = _kernels.flow_terms(
        state.as_array(), params.alpha, lam_c, ups_c, mu_c, e_c, gam_c
    )
    if d <= 0.0:
        raise DegenerateDenominator(f"common denominator D = {d} <= 0")
    return f_form, grad_v


def symplectic_form(params: ModelParams, state: VortexState) -> SymplecticForm:
    """Curl F_ij = d_i a_j - d_j a_i of the kinetic coefficients (analytic)."""
    f_form, _ = _flow_terms(params, state)
    return SymplecticForm(matrix=f_form)


def potential_gradient(params: ModelParams, state: VortexState) -> np.ndarray:
    """Analytic gradient of the potential (= reduced Hamiltonian)."""
    _, grad_v = _flow_terms(params, state)
    return grad_v


def velocity_field(
    params: ModelParams,
    state: VortexState,
    det_tol: float = DEFAULT_DET_TOL,
    min_kinetic: float = DEFAULT_MIN_KINETIC,
) -> np.ndarray:
    """Unique Euler-Lagrange velocity: the solution of F(q) qdot = grad V(q)."""
    _check_kinetic(params, min_kinetic)
    lam_c, ups_c, mu_c, e_c, gam_c = _coeffs(params)
    qdot, status = _kernels.flow_rhs(
        state.as_array(), params.alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol
    )
    _raise_for_status(int(status), params)
    return qdot


def _raise_for_status(status: int, params: ModelParams, t_end: float | None = None):
    if status == _kernels.STATUS_OK:
        return
    if status == _kernels.STATUS_SINGULAR:
        raise SingularSymplecticForm(
            f"kinetic two-form singular (lam = {params.lam}); "
            "flow undefined at this state"
        )
    if status == _kernels.STATUS_BAD_DENOMINATOR:
        raise DegenerateDenominator("common denominator D <= 0 along the flow")
    if status == _kernels.STATUS_UNDERFLOW:
        raise StepSizeUnderflow(f"step size fell below 1e-14 * t_end = {1e-14 * abs(t_end or 0.0):.3e}")
    if status == _kernels.STATUS_MAX_STEPS:
        raise RuntimeError("step budget exhausted before reaching t_end")
    raise RuntimeError(f"unknown integrator status {status}")


def integrate(
    params: ModelParams,
    state0: VortexState,
    t_end: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    initial_step: float | None = None,
    max_steps: int = 500_000,
    det_tol: float = DEFAULT_DET_TOL,
    min_kinetic: float = DEFAULT_MIN_KINETIC,
) -> Trajectory:
    """Integrate the vortex flow from t = 0 to t_end (either sign).

    Adaptive Dormand-Prince 5(4) with PI-free standard step control;
    records H, s1, s2 and the relative energy drift at every accepted
    step.  Raises SingularSymplecticForm up front when the kinetic
    weights are degenerate (lam too close to 1/2) and mid-run if the
    two-form loses rank along the trajectory.
    """
    if t_end == 0.0:
        raise ValueError("t_end must be nonzero")
    _check_kinetic(params, min_kinetic)
    lam_c, ups_c, mu_c, e_c, gam_c = _coeffs(params)
    h0 = abs(t_end) / 1000.0 if initial_step is None else abs(initial_step)
    ts, qs, hs, n_acc, n_rej, n_rhs, status = _kernels.integrate_dp54(
        state0.as_array(),
        float(t_end),
        float(rtol),
        float(atol),
        h0,
        int(max_steps),
        params.alpha,
        lam_c,
        ups_c,
        mu_c,
        e_c,
        gam_c,
        det_tol,
    )
    _raise_for_status(int(status), params, t_end)

    x1, y1, x2, y2 = qs[:, 0], qs[:, 1], qs[:, 2], qs[:, 3]
    a1, a2, d = geometry(params, x1, y1, x2, y2)
    b = 2.0 / params.alpha + (x1 * x1 + y1 * y1) + (x2 * x2 + y2 * y2)
    energy = 0.5 * lam_c * b / d
    s1 = -e_c * a2 * (x1 * x1 + y1 * y1) / d
    s2 = -gam_c * a1 * (x2 * x2 + y2 * y2) / d
    drift = np.abs(energy - energy[0]) / abs(energy[0])
    return Trajectory(
        times=ts,
        states=qs,
        step_sizes=hs,
        energy=energy,
        s1=s1,
        s2=s2,
        energy_drift=drift,
        n_accepted=int(n_acc),
        n_rejected=int(n_rej),
        n_rhs=int(n_rhs),
        params=params,
    )


def fit_frequency(times: np.ndarray, values: np.ndarray) -> float:
    """Least-squares sinusoid frequency of a sampled oscillation.

    Seeds the search with the mean zero-crossing spacing of the demeaned
    signal, then minimizes the residual of the linear fit
    a*cos(w t) + b*sin(w t) + c over w.  Robust to the small anharmonic
    corrections of finite-amplitude trajectories; needs a few periods of
    data.  Independent of any model formula.
    """
    from scipy.optimize import minimize_scalar

    values = np.asarray(values, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)
    centered = values - values.mean()
    signs = np.sign(centered)
    flips = np.nonzero(signs[1:] * signs[:-1] < 0)[0]
    if len(flips) < 3:
        raise ValueError("need at least three zero crossings to seed the frequency fit")
    crossings = []
    for i in flips:
        t0, t1 = times[i], times[i + 1]
        v0, v1 = centered[i], centered[i + 1]
        crossings.append(t0 - v0 * (t1 - t0) / (v1 - v0))
    crossings = np.asarray(crossings)
    half_period = np.mean(np.diff(crossings))
    omega_seed = math.pi / half_period

    def residual(omega):
        design = np.column_stack(
            [np.cos(omega * times), np.sin(omega * times), np.ones_like(times)]
        )
        _, res, _, _ = np.linalg.lstsq(design, values, rcond=None)
        if res.size == 0:
            diff = design @ np.linalg.lstsq(design, values, rcond=None)[0] - values
            return float(diff @ diff)
        return float(res[0])

    opt = minimize_scalar(
        residual,
        bounds=(0.8 * omega_seed, 1.25 * omega_seed),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return float(opt.x)


@dataclass
class AntisymmetricReport:
    """Diagnostic for antisymmetric initial data (X2, Y2) = (-X1, -Y1).

    Reports how far the full 4-D flow leaves the antisymmetric subspace
    and how far the state moves at all; it asserts nothing, because the
    restricted-Lagrangian "static" prediction is derived before variation
    and need not commute with the full flow.
    """

    weight_class: str  # "E=-Gamma", "E=+Gamma", or "mixed"
    subspace_drift: float  # max |(X2, Y2) + (X1, Y1)| along the trajectory
    displacement: float  # max |q(t) - q(0)|
    trajectory: Trajectory = field(repr=False)


def antisymmetric_subspace_diagnostic(
    params: ModelParams,
    state0: VortexState,
    t_end: float,
    antisym_tol: float = 1e-12,
    **integrate_kwargs,
) -> AntisymmetricReport:
    """Integrate antisymmetric initial data and report subspace/static drift."""
    if (
        abs(state0.x2 + state0.x1) > antisym_tol
        or abs(state0.y2 + state0.y1) > antisym_tol
    ):
        raise ValueError("initial state must satisfy (X2, Y2) = (-X1, -Y1)")
    c = derived_coefficients(params)
    if np.isclose(c.E, -c.Gamma):
        weight_class = "E=-Gamma"
    elif np.isclose(c.E, c.Gamma):
        weight_class = "E=+Gamma"
    else:
        weight_class = "mixed"
    traj = integrate(params, state0, t_end, **integrate_kwargs)
    drift = np.hypot(
        traj.states[:, 2] + traj.states[:, 0], traj.states[:, 3] + traj.states[:, 1]
    )
    displacement = np.linalg.norm(traj.states - traj.states[0], axis=1)
    return AntisymmetricReport(
        weight_class=weight_class,
        subspace_drift=float(drift.max()),
        displacement=float(displacement.max()),
        trajectory=traj,
    )
