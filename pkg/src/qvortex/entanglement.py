"""Reduced density matrix, Schmidt spectrum, and von Neumann entropy.

Two computations are provided side by side.  The textbook-style 2x2
formula (`reduced_density_orthonormal`) treats the two single-particle basis
functions as orthonormal, which holds only at special coordinates (both
cross-overlaps vanish at the origin).  The Gram-corrected computation
(`entropy_gram`) handles the non-orthogonal basis exactly through the
overlap matrices and is the authoritative value here; the difference
between the two is reported, never hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalRankLoss
from .model import ModelParams, VortexState, normalization_factor

__all__ = [
    "ReducedDensity",
    "EntropySweepResult",
    "overlap_matrices",
    "reduced_density_orthonormal",
    "entropy_orthonormal",
    "schmidt_eigenvalues_gram",
    "entropy_gram",
    "entropy_subsystem_equality",
    "reduced_density",
    "entropy_sweep",
]

CLAMP_WINDOW = -1e-12  # eigenvalues in [CLAMP_WINDOW, 0) are set to 0


def overlap_matrices(params: ModelParams, state: VortexState):
    """Hermitian Gram matrices of the single-particle pairs.

    S_A is over {psi_1, psi_2} (particle 1), S_B over {phi_2, phi_1}
    (particle 2, in the order the superposition pairs them with psi).
    Diagonals are (pi/alpha)(1/alpha + R_i); the cross terms are the
    closed-form Gaussian overlaps.
    """
    alpha = params.alpha
    pref = math.pi / alpha

    def gram(cx, cy, sign_first):
        diag = pref * (1.0 / alpha + cx * cx + cy * cy)
        cross = pref * ((cx * cx - cy * cy) - 2j * sign_first * cx * cy)
        return np.array([[diag, cross], [np.conj(cross), diag]], dtype=np.complex128)

    s_a = gram(state.x1, state.y1, params.eps1)
    s_b = gram(state.x2, state.y2, params.gamma2)
    return s_a, s_b


def reduced_density_orthonormal(params: ModelParams, state: VortexState):
    """Orthonormal-basis 2x2 reduction: entries and trace-normalized spectrum.

    Returns (a1, a2, b, p_plus, p_minus).  a1, a2 are the diagonal weights,
    b the off-diagonal coherence; p_+- come from diagonalizing
    [[a1, b], [b*, a2]] and are normalized by the trace.
    """
    lam = params.lam
    alpha = params.alpha
    n_sq = normalization_factor(params, state) ** 2
    pref = n_sq * math.pi / alpha
    a2_geom = 1.0 / alpha + state.x2 * state.x2 + state.y2 * state.y2
    a1 = pref * lam * lam * a2_geom
    a2 = pref * (1.0 - lam) * (1.0 - lam) * a2_geom
    b = (
        pref
        * lam
        * (1.0 - lam)
        * (
            state.x2 * state.x2
            - state.y2 * state.y2
            - 1j * (params.gamma1 - params.gamma2) * state.x2 * state.y2
        )
    )
    # b == 0 (product state or origin) makes the gap exactly |a1 - a2|;
    # taking that branch keeps the degenerate spectrum exact in floats
    gap = abs(a1 - a2) if b == 0 else math.sqrt((a1 - a2) ** 2 + 4.0 * abs(b) ** 2)
    trace = a1 + a2
    p_plus = (trace + gap) / (2.0 * trace)
    p_minus = (trace - gap) / (2.0 * trace)
    return a1, a2, complex(b), p_plus, p_minus


def _entropy_from_spectrum(p_plus: float, p_minus: float) -> float:
    total = 0.0
    for p in (p_plus, p_minus):
        if p < CLAMP_WINDOW:
            raise NumericalRankLoss(f"Schmidt eigenvalue {p} below clamping window")
        if p <= 0.0:
            continue
        total -= p * math.log(p)
    return total


def entropy_orthonormal(params: ModelParams, state: VortexState) -> float:
    """Entropy of the orthonormal-basis spectrum (comparison value)."""
    _, _, _, p_plus, p_minus = reduced_density_orthonormal(params, state)
    return _entropy_from_spectrum(p_plus, p_minus)


def _sqrtm_psd_2x2(m: np.ndarray) -> np.ndarray:
    """Principal square root of a 2x2 Hermitian positive-semidefinite matrix."""
    trace = m[0, 0].real + m[1, 1].real
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    root_det = math.sqrt(max(det, 0.0))
    denom = math.sqrt(max(trace + 2.0 * root_det, 0.0))
    if denom == 0.0:
        return np.zeros_like(m)
    return (m + root_det * np.eye(2)) / denom


def schmidt_eigenvalues_gram(
    params: ModelParams, state: VortexState, subsystem: str = "first"
):
    """Exact normalized Schmidt pair via T = S^(1/2) C S_other^T C S^(1/2).

    C = diag(lam, 1-lam) is the superposition coefficient matrix.  The
    determinant of T is evaluated in factored form det(S_A) det(S_B)
    lam^2 (1-lam)^2, which keeps the product state (lam = 0) exactly
    rank one in floating point.
    """
    s_a, s_b = overlap_matrices(params, state)
    if subsystem == "first":
        s_own, s_other = s_a, s_b
    elif subsystem == "second":
        s_own, s_other = s_b, s_a
    else:
        raise ValueError(f"subsystem must be 'first' or 'second', got {subsystem!r}")

    lam = params.lam
    coeff = np.array([[lam, 0.0], [0.0, 1.0 - lam]])
    root = _sqrtm_psd_2x2(s_own)
    t_mat = root @ coeff @ s_other.T @ coeff @ root

    trace = float(t_mat[0, 0].real + t_mat[1, 1].real)
    det_a = float((s_a[0, 0] * s_a[1, 1] - s_a[0, 1] * s_a[1, 0]).real)
    det_b = float((s_b[0, 0] * s_b[1, 1] - s_b[0, 1] * s_b[1, 0]).real)
    det_t = det_a * det_b * (lam * (1.0 - lam)) ** 2
    if det_t == 0.0:
        gap = trace  # exactly rank one; avoids sqrt(trace^2) rounding
    else:
        gap = math.sqrt(max(trace * trace - 4.0 * det_t, 0.0))
    p_plus = (trace + gap) / (2.0 * trace)
    p_minus = (trace - gap) / (2.0 * trace)
    return p_plus, p_minus


def entropy_gram(params: ModelParams, state: VortexState, subsystem: str = "first") -> float:
    """von Neumann entropy with basis non-orthogonality handled exactly."""
    p_plus, p_minus = schmidt_eigenvalues_gram(params, state, subsystem)
    return _entropy_from_spectrum(p_plus, p_minus)


def entropy_subsystem_equality(params: ModelParams, state: VortexState):
    """Both subsystem entropies and their difference (pure-state equality)."""
    s_first = entropy_gram(params, state, "first")
    s_second = entropy_gram(params, state, "second")
    return s_first, s_second, s_first - s_second


@dataclass(frozen=True)
class ReducedDensity:
    """Reduction of the pure two-vortex state onto particle 1.

    a1, a2, b are the orthonormal-basis entries; S_A, S_B the Gram
    matrices; p_plus, p_minus the authoritative (Gram-corrected) Schmidt
    eigenvalues.
    """

    a1: float
    a2: float
    b: complex
    s_a: np.ndarray
    s_b: np.ndarray
    p_plus: float
    p_minus: float


def reduced_density(params: ModelParams, state: VortexState) -> ReducedDensity:
    a1, a2, b, _, _ = reduced_density_orthonormal(params, state)
    s_a, s_b = overlap_matrices(params, state)
    p_plus, p_minus = schmidt_eigenvalues_gram(params, state, "first")
    return ReducedDensity(a1=a1, a2=a2, b=b, s_a=s_a, s_b=s_b, p_plus=p_plus, p_minus=p_minus)


@dataclass
class EntropySweepResult:
    """Entropy against the entanglement weight, with a stationarity estimate."""

    lam_grid: np.ndarray
    entropy_orthonormal: np.ndarray
    entropy_gram: np.ndarray
    difference: np.ndarray
    stationary_point: float
    tail_lam: np.ndarray
    tail_slope: np.ndarray  # one-sided dS/dlam at the tail grid points


def entropy_sweep(
    params_base: ModelParams, state: VortexState, lam_grid
) -> EntropySweepResult:
    """Tabulate S(lam) on a grid in [0, 1/2) and extrapolate dS/dlam -> 0.

    The stationary point is estimated from a straight-line fit of the
    one-sided finite-difference slope at the last few grid points, whose
    root extrapolates where the slope vanishes.
    """
    lam_grid = np.asarray(lam_grid, dtype=np.float64)
    if lam_grid.size == 0:
        raise ValueError("empty entanglement-weight grid")
    if np.any(lam_grid < 0.0) or np.any(lam_grid >= 0.5):
        raise ValueError("grid values must lie in [0, 0.5)")
    if np.any(np.diff(lam_grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")

    s_plain = np.empty_like(lam_grid)
    s_gram = np.empty_like(lam_grid)
    for i, lam in enumerate(lam_grid):
        params = ModelParams(
            lam=float(lam),
            alpha=params_base.alpha,
            eps1=params_base.eps1,
            eps2=params_base.eps2,
            gamma1=params_base.gamma1,
            gamma2=params_base.gamma2,
        )
        s_plain[i] = entropy_orthonormal(params, state)
        s_gram[i] = entropy_gram(params, state)

    n_tail = min(6, lam_grid.size - 1)
    if n_tail >= 2:
        slopes = (s_gram[-n_tail:] - s_gram[-n_tail - 1 : -1]) / (
            lam_grid[-n_tail:] - lam_grid[-n_tail - 1 : -1]
        )
        tail_lam = 0.5 * (lam_grid[-n_tail:] + lam_grid[-n_tail - 1 : -1])
        fit = np.polyfit(tail_lam, slopes, 1)
        stationary = -fit[1] / fit[0] if fit[0] != 0.0 else math.nan
    else:
        tail_lam = np.array([])
        slopes = np.array([])
        stationary = math.nan

    return EntropySweepResult(
        lam_grid=lam_grid,
        entropy_orthonormal=s_plain,
        entropy_gram=s_gram,
        difference=s_gram - s_plain,
        stationary_point=float(stationary),
        tail_lam=tail_lam,
        tail_slope=slopes,
    )
