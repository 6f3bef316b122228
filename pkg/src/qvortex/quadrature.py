"""Gauss-Hermite quadrature oracles.

Every closed form in the model (normalization, reduced Lagrangian,
overlap matrices, reduced-density entries) is an integral of a polynomial
against the Gaussian weight exp(-alpha*x^2) in each of the four
coordinates, so a small tensor-product Gauss-Hermite rule evaluates it
exactly up to roundoff.  These routines are the independent side of the
dual-route checks: they consume the wavefunction evaluators, never the
closed forms they certify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import OrderOutOfRange
from .model import (
    ModelParams,
    VortexState,
    VortexVelocity,
    ansatz_laplacian,
    ansatz_time_derivative,
    ansatz_value,
)

__all__ = [
    "QuadratureRule",
    "gauss_hermite_rule",
    "norm_quadrature",
    "lagrangian_quadrature",
    "overlap_quadrature",
    "reduced_density_grid_eigenvalues",
]

MAX_ORDER = 64


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for the weight function exp(-scaling * x^2).

    Exact for polynomials of degree <= 2*order - 1.  `weights` integrate
    against the Gaussian weight; `lifted_weights` absorb the weight so the
    rule can be applied to a full integrand that already contains it.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    scaling: float

    @property
    def lifted_weights(self) -> np.ndarray:
        return self.weights * np.exp(self.scaling * self.nodes**2)


def _orthonormal_hermite_sumsq(nodes: np.ndarray, n: int) -> np.ndarray:
    """sum_k p_k(x)^2 over the first n orthonormal Hermite polynomials."""
    p_prev = np.full_like(nodes, math.pi**-0.25)
    total = p_prev**2
    p_curr = nodes * p_prev / math.sqrt(0.5)
    for k in range(1, n):
        total += p_curr**2
        if k == n - 1:
            break
        p_next = (nodes * p_curr - math.sqrt(k / 2.0) * p_prev) / math.sqrt((k + 1) / 2.0)
        p_prev, p_curr = p_curr, p_next
    return total


@lru_cache(maxsize=256)
def _rule_cached(n: int, alpha: float) -> QuadratureRule:
    if n == 1:
        nodes = np.zeros(1)
        weights = np.array([math.sqrt(math.pi / alpha)])
    else:
        # Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of
        # the (physicists') Hermite recurrence (zero diagonal, off-diagonal
        # sqrt(k/2)); weights come from the equivalent Christoffel-function
        # identity w_i = 1/sum_k p_k(x_i)^2, which stays accurate in the
        # tails where squared first eigenvector components underflow.
        off = np.sqrt(np.arange(1, n) / 2.0)
        nodes_std = eigh_tridiagonal(np.zeros(n), off, eigvals_only=True)
        weights_std = 1.0 / _orthonormal_hermite_sumsq(nodes_std, n)
        # enforce the exact +-x symmetry of the rule
        nodes_std = 0.5 * (nodes_std - nodes_std[::-1])
        weights_std = 0.5 * (weights_std + weights_std[::-1])
        root = math.sqrt(alpha)
        nodes = nodes_std / root
        weights = weights_std / root
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes=nodes, weights=weights, order=n, scaling=alpha)


def gauss_hermite_rule(n: int, alpha: float) -> QuadratureRule:
    """Gauss-Hermite rule of order n for the weight exp(-alpha*x^2)."""
    if not isinstance(n, (int, np.integer)) or not (1 <= n <= MAX_ORDER):
        raise OrderOutOfRange(f"order must be an integer in 1..{MAX_ORDER}, got {n}")
    if alpha <= 0.0:
        raise ValueError(f"scaling must be positive, got {alpha}")
    return _rule_cached(int(n), float(alpha))


def _grid4(rule: QuadratureRule):
    """4-D tensor grid (broadcastable axes) and the lifted weight product."""
    x = rule.nodes
    w = rule.lifted_weights
    n = rule.order
    x1 = x.reshape(n, 1, 1, 1)
    y1 = x.reshape(1, n, 1, 1)
    x2 = x.reshape(1, 1, n, 1)
    y2 = x.reshape(1, 1, 1, n)
    w4 = (
        w.reshape(n, 1, 1, 1)
        * w.reshape(1, n, 1, 1)
        * w.reshape(1, 1, n, 1)
        * w.reshape(1, 1, 1, n)
    )
    return x1, y1, x2, y2, w4


def _points(x, y):
    return np.stack(np.broadcast_arrays(x, y), axis=-1)


def norm_quadrature(params: ModelParams, state: VortexState, n: int = 5) -> float:
    """Tensor-product quadrature of the squared norm of the trial state.

    The integrand is polynomial (degree <= 2 per variable) times the
    Gaussian weight, so n >= 3 is exact up to roundoff; returns 1 for a
    correctly normalized state.
    """
    rule = gauss_hermite_rule(n, params.alpha)
    x1, y1, x2, y2, w4 = _grid4(rule)
    x1, y1, x2, y2 = np.broadcast_arrays(x1, y1, x2, y2)
    value = ansatz_value(params, state, _points(x1, y1), _points(x2, y2))
    return float(np.sum(w4 * (value.real**2 + value.imag**2)))


def lagrangian_quadrature(
    params: ModelParams, state: VortexState, velocity: VortexVelocity, n: int = 7
) -> complex:
    """Quadrature of the Lagrangian functional <Phi| (i d/dt - H) |Phi>.

    Uses the analytic time derivative and Laplacian of the trial state
    (each validated separately by finite differences); H is the free
    two-particle kinetic operator.  The real part equals the reduced
    Lagrangian up to one state-independent additive constant; the
    imaginary part vanishes by norm conservation.
    """
    rule = gauss_hermite_rule(n, params.alpha)
    x1, y1, x2, y2, w4 = _grid4(rule)
    x1, y1, x2, y2 = np.broadcast_arrays(x1, y1, x2, y2)
    r1 = _points(x1, y1)
    r2 = _points(x2, y2)
    value = ansatz_value(params, state, r1, r2)
    dt_value = ansatz_time_derivative(params, state, velocity, r1, r2)
    lap = ansatz_laplacian(params, state, r1, r2)
    integrand = np.conj(value) * (1j * dt_value + 0.5 * lap)
    return complex(np.sum(w4 * integrand))


def _pair_overlaps(alpha: float, center, signs, rule: QuadratureRule):
    """2x2 Gram matrix of the two opposite-sign vortex factors at `center`."""
    x = rule.nodes.reshape(-1, 1)
    y = rule.nodes.reshape(1, -1)
    w2 = rule.weights.reshape(-1, 1) * rule.weights.reshape(1, -1)
    cx, cy = center
    fa = (x - cx) + 1j * signs[0] * (y - cy)
    fb = (x - cx) + 1j * signs[1] * (y - cy)
    gram = np.empty((2, 2), dtype=np.complex128)
    for i, fi in enumerate((fa, fb)):
        for j, fj in enumerate((fa, fb)):
            gram[i, j] = np.sum(w2 * np.conj(fi) * fj)
    return gram


def overlap_quadrature(params: ModelParams, state: VortexState, n: int = 5):
    """Quadrature evaluation of the two single-particle Gram matrices.

    Returns (S_A, S_B): S_A over the particle-1 pair {psi_1, psi_2} and
    S_B over the particle-2 pair {phi_2, phi_1} (that basis order).
    """
    rule = gauss_hermite_rule(n, params.alpha)
    s_a = _pair_overlaps(
        params.alpha, (state.x1, state.y1), (params.eps1, params.eps2), rule
    )
    s_b = _pair_overlaps(
        params.alpha, (state.x2, state.y2), (params.gamma2, params.gamma1), rule
    )
    return s_a, s_b


def reduced_density_grid_eigenvalues(
    params: ModelParams,
    state: VortexState,
    n_grid: int = 32,
    n_trace: int = 8,
    subsystem: str = "first",
    k: int = 4,
) -> np.ndarray:
    """Brute-force Schmidt spectrum from a grid-sampled density kernel.

    Samples rho(r, r') = integral Phi(r, s) Phi*(r', s) d^2 s on an
    (n_grid x n_grid) Gauss-Hermite grid per axis, symmetrizes with the
    quadrature weights, and diagonalizes.  Returns the k largest
    eigenvalues in descending order (they sum to ~1).  Independent of the
    closed-form Gram computation.
    """
    rule_grid = gauss_hermite_rule(n_grid, params.alpha)
    rule_tr = gauss_hermite_rule(n_trace, params.alpha)

    gx = rule_grid.nodes.reshape(-1, 1)
    gy = rule_grid.nodes.reshape(1, -1)
    gx, gy = np.broadcast_arrays(gx, gy)
    pts = _points(gx, gy).reshape(-1, 2)  # (m, 2) grid for the kept particle
    gw = (rule_grid.weights.reshape(-1, 1) * rule_grid.weights.reshape(1, -1)).reshape(-1)

    tx = rule_tr.nodes.reshape(-1, 1)
    ty = rule_tr.nodes.reshape(1, -1)
    tx, ty = np.broadcast_arrays(tx, ty)
    tpts = _points(tx, ty).reshape(-1, 2)  # (s, 2) traced-out grid
    tw = (
        rule_tr.lifted_weights.reshape(-1, 1) * rule_tr.lifted_weights.reshape(1, -1)
    ).reshape(-1)

    m = pts.shape[0]
    s = tpts.shape[0]
    r_kept = pts[:, None, :]  # (m, 1, 2)
    r_tr = tpts[None, :, :]  # (1, s, 2)
    if subsystem == "first":
        amp = ansatz_value(params, state, np.broadcast_to(r_kept, (m, s, 2)),
                           np.broadcast_to(r_tr, (m, s, 2)))
    elif subsystem == "second":
        amp = ansatz_value(params, state, np.broadcast_to(r_tr, (m, s, 2)),
                           np.broadcast_to(r_kept, (m, s, 2)))
    else:
        raise ValueError(f"subsystem must be 'first' or 'second', got {subsystem!r}")

    # kernel without the kept-particle Gaussian weight (absorbed into gw):
    # K[i,j] = sum_t amp[i,t] * conj(amp[j,t]) * tw[t], then W^1/2 K W^1/2
    kern = (amp * tw) @ np.conj(amp.T)
    # lift the kept-particle envelope out of the kernel so gw matches it
    lift = np.exp(0.5 * params.alpha * (pts[:, 0] ** 2 + pts[:, 1] ** 2))
    kern = kern * lift[:, None] * lift[None, :]
    root_w = np.sqrt(gw)
    sym = kern * root_w[:, None] * root_w[None, :]
    evals = np.linalg.eigvalsh(sym)
    return evals[::-1][:k]
