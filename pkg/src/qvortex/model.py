"""Closed-form quantities of the two-vortex trial state.

The trial state is an entangled superposition of two product states, each
a pointlike-vortex wavefunction (linear zero times a Gaussian envelope
centred at the origin).  Everything here is an exact algebraic expression
in the four vortex coordinates (X1, Y1, X2, Y2): the normalization factor,
the velocity-linear reduced Lagrangian, the reduced Hamiltonian, canonical
and angular momenta, and the position-dependent spin-spin coupling.

All evaluators broadcast over numpy arrays; units are hbar = m = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateKinetics,
    DegenerateDenominator,
    InvalidParams,
    NonPositiveRadicand,
    OriginSingular,
)

__all__ = [
    "ModelParams",
    "DerivedCoefficients",
    "VortexState",
    "VortexVelocity",
    "derived_coefficients",
    "geometry",
    "normalization_factor",
    "ansatz_value",
    "ansatz_time_derivative",
    "ansatz_laplacian",
    "reduced_lagrangian",
    "reduced_hamiltonian",
    "canonical_momenta",
    "angular_momenta",
    "coupling_g",
    "coupling_label",
    "nh_residual",
]


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: entanglement weight, envelope width, vortex signs.

    lam      -- superposition weight in [0, 1/2); 0 is a product state
    alpha    -- Gaussian envelope constant (> 0, inverse length^2)
    eps1..gamma2 -- vortex rotation signs (+-1) with eps1*eps2 = gamma1*gamma2 = -1

    Defaults follow the fixed-vortex analysis: eps = (-1, +1) so that the
    kinetic weight E = 1 - 2*lam is positive, and gamma = (+1, -1) so that
    the second weight Gamma equals +E.
    """

    lam: float
    alpha: float = 1.0
    eps1: int = -1
    eps2: int = 1
    gamma1: int = 1
    gamma2: int = -1

    def __post_init__(self):
        if not (0.0 <= self.lam < 0.5):
            raise InvalidParams(
                f"entanglement weight must satisfy 0 <= lam < 1/2, got {self.lam}"
            )
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise InvalidParams(f"alpha must be positive and finite, got {self.alpha}")
        for name in ("eps1", "eps2", "gamma1", "gamma2"):
            if getattr(self, name) not in (-1, 1):
                raise InvalidParams(f"{name} must be +1 or -1, got {getattr(self, name)}")
        if self.eps1 * self.eps2 != -1 or self.gamma1 * self.gamma2 != -1:
            raise InvalidParams("vortex signs must be opposite: eps1*eps2 = gamma1*gamma2 = -1")


@dataclass(frozen=True)
class DerivedCoefficients:
    """Coefficients derived from the superposition weights and signs.

    Lambda  -- squared-weight sum lam^2 + (1-lam)^2
    Upsilon -- cross weight 2*lam*(1-lam)
    mu      -- sign product (eps1-eps2)*(gamma1-gamma2), either -4 or +4
    E       -- signed kinetic weight of vortex 1: lam^2*eps1 + (1-lam)^2*eps2
    Gamma   -- signed kinetic weight of vortex 2: lam^2*gamma2 + (1-lam)^2*gamma1

    The algebraic identity E^2 = Gamma^2 = Lambda^2 - Upsilon^2 = (1-2*lam)^2
    holds for every valid parameter set.
    """

    Lambda: float
    Upsilon: float
    mu: float
    E: float
    Gamma: float


@dataclass(frozen=True)
class VortexState:
    """The four collective coordinates (positions of the two vortices)."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x1, self.y1, self.x2, self.y2)):
            raise ValueError("vortex coordinates must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.y1, self.x2, self.y2], dtype=np.float64)

    @classmethod
    def from_array(cls, q) -> "VortexState":
        q = np.asarray(q, dtype=np.float64)
        return cls(float(q[0]), float(q[1]), float(q[2]), float(q[3]))


@dataclass(frozen=True)
class VortexVelocity:
    """Time derivatives of the four vortex coordinates."""

    dx1: float
    dy1: float
    dx2: float
    dy2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.dx1, self.dy1, self.dx2, self.dy2)):
            raise ValueError("vortex velocities must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.dx1, self.dy1, self.dx2, self.dy2], dtype=np.float64)

    @classmethod
    def from_array(cls, v) -> "VortexVelocity":
        v = np.asarray(v, dtype=np.float64)
        return cls(float(v[0]), float(v[1]), float(v[2]), float(v[3]))


def derived_coefficients(params: ModelParams) -> DerivedCoefficients:
    """All five weight/sign coefficients for a valid parameter set."""
    lam = params.lam
    w0 = lam * lam
    w1 = (1.0 - lam) * (1.0 - lam)
    return DerivedCoefficients(
        Lambda=w0 + w1,
        Upsilon=2.0 * lam * (1.0 - lam),
        mu=float((params.eps1 - params.eps2) * (params.gamma1 - params.gamma2)),
        E=w0 * params.eps1 + w1 * params.eps2,
        Gamma=w0 * params.gamma2 + w1 * params.gamma1,
    )


def geometry(params: ModelParams, x1, y1, x2, y2):
    """Shared geometric building blocks, broadcast over the inputs.

    Returns (A1, A2, D) where A_i = 1/alpha + R_i and D is the common
    denominator
        D = Lambda*A1*A2 + Upsilon*[(X1^2-Y1^2)(X2^2-Y2^2) + mu*X1*Y1*X2*Y2],
    which is also the radicand (up to (alpha/pi)^2) of the normalization.
    """
    c = derived_coefficients(params)
    inv_a = 1.0 / params.alpha
    r1 = x1 * x1 + y1 * y1
    r2 = x2 * x2 + y2 * y2
    a1 = inv_a + r1
    a2 = inv_a + r2
    cross = (x1 * x1 - y1 * y1) * (x2 * x2 - y2 * y2) + c.mu * x1 * y1 * x2 * y2
    d = c.Lambda * a1 * a2 + c.Upsilon * cross
    return a1, a2, d


def _geometry_checked(params: ModelParams, state: VortexState):
    a1, a2, d = geometry(params, state.x1, state.y1, state.x2, state.y2)
    if d <= 0.0:
        raise DegenerateDenominator(f"common denominator D = {d} <= 0")
    return a1, a2, d


def grad_denominator(params: ModelParams, x1, y1, x2, y2) -> np.ndarray:
    """Gradient of the common denominator D w.r.t. (X1, Y1, X2, Y2)."""
    c = derived_coefficients(params)
    inv_a = 1.0 / params.alpha
    a1 = inv_a + x1 * x1 + y1 * y1
    a2 = inv_a + x2 * x2 + y2 * y2
    p1 = x1 * x1 - y1 * y1
    p2 = x2 * x2 - y2 * y2
    q1 = x1 * y1
    q2 = x2 * y2
    return np.array(
        [
            2.0 * x1 * (c.Lambda * a2 + c.Upsilon * p2) + c.Upsilon * c.mu * y1 * q2,
            2.0 * y1 * (c.Lambda * a2 - c.Upsilon * p2) + c.Upsilon * c.mu * x1 * q2,
            2.0 * x2 * (c.Lambda * a1 + c.Upsilon * p1) + c.Upsilon * c.mu * q1 * y2,
            2.0 * y2 * (c.Lambda * a1 - c.Upsilon * p1) + c.Upsilon * c.mu * q1 * x2,
        ]
    )


def normalization_factor(params: ModelParams, state: VortexState) -> float:
    """Normalization N = (alpha/pi)/sqrt(D) of the trial state."""
    _, _, d = geometry(params, state.x1, state.y1, state.x2, state.y2)
    if d <= 0.0:
        raise NonPositiveRadicand(f"normalization radicand D = {d} <= 0")
    return params.alpha / (math.pi * math.sqrt(d))


def _unpack_point(r):
    r = np.asarray(r, dtype=np.float64)
    return r[..., 0], r[..., 1]


def _prefactors(params: ModelParams, state: VortexState, r1, r2):
    """Linear vortex prefactors u1, u2 (particle 1) and v1, v2 (particle 2)."""
    x1, y1 = _unpack_point(r1)
    x2, y2 = _unpack_point(r2)
    dx1 = x1 - state.x1
    dy1 = y1 - state.y1
    dx2 = x2 - state.x2
    dy2 = y2 - state.y2
    u1 = dx1 + 1j * params.eps1 * dy1
    u2 = dx1 + 1j * params.eps2 * dy1
    v1 = dx2 + 1j * params.gamma1 * dy2
    v2 = dx2 + 1j * params.gamma2 * dy2
    return u1, u2, v1, v2


def _envelope(params: ModelParams, r1, r2):
    x1, y1 = _unpack_point(r1)
    x2, y2 = _unpack_point(r2)
    rsq1 = x1 * x1 + y1 * y1
    rsq2 = x2 * x2 + y2 * y2
    return np.exp(-0.5 * params.alpha * (rsq1 + rsq2)), rsq1, rsq2


def ansatz_value(params: ModelParams, state: VortexState, r1, r2):
    """Normalized trial wavefunction at particle positions r1, r2.

    r1, r2 are array-likes with trailing dimension 2; the result broadcasts
    over any leading shape.
    """
    n = normalization_factor(params, state)
    u1, u2, v1, v2 = _prefactors(params, state, r1, r2)
    env, _, _ = _envelope(params, r1, r2)
    lam = params.lam
    return n * (lam * u1 * v2 + (1.0 - lam) * u2 * v1) * env


def ansatz_time_derivative(
    params: ModelParams, state: VortexState, velocity: VortexVelocity, r1, r2
):
    """Exact dPhi/dt for moving vortex coordinates, including dN/dt.

    Only the linear prefactors and the normalization depend on time; the
    envelope is pinned to the origin.
    """
    n = normalization_factor(params, state)
    u1, u2, v1, v2 = _prefactors(params, state, r1, r2)
    env, _, _ = _envelope(params, r1, r2)
    lam = params.lam

    du1 = -(velocity.dx1 + 1j * params.eps1 * velocity.dy1)
    du2 = -(velocity.dx1 + 1j * params.eps2 * velocity.dy1)
    dv1 = -(velocity.dx2 + 1j * params.gamma1 * velocity.dy2)
    dv2 = -(velocity.dx2 + 1j * params.gamma2 * velocity.dy2)

    s = lam * u1 * v2 + (1.0 - lam) * u2 * v1
    ds = lam * (du1 * v2 + u1 * dv2) + (1.0 - lam) * (du2 * v1 + u2 * dv1)

    _, _, d = _geometry_checked(params, state)
    dgrad = grad_denominator(params, state.x1, state.y1, state.x2, state.y2)
    dlog_n = -float(dgrad @ velocity.as_array()) / (2.0 * d)  # = Ndot/N

    return n * (ds + dlog_n * s) * env


def ansatz_laplacian(params: ModelParams, state: VortexState, r1, r2):
    """(lap_1 + lap_2) of the trial state, evaluated analytically."""
    n = normalization_factor(params, state)
    u1, u2, v1, v2 = _prefactors(params, state, r1, r2)
    env, rsq1, rsq2 = _envelope(params, r1, r2)
    lam = params.lam
    alpha = params.alpha
    x1, y1 = _unpack_point(r1)
    x2, y2 = _unpack_point(r2)

    # lap(u * exp(-a r^2/2)) = [u*(a^2 r^2 - 2a) - 2a*(x + i s y)] * exp(...)
    g1 = alpha * alpha * rsq1 - 2.0 * alpha
    g2 = alpha * alpha * rsq2 - 2.0 * alpha
    lap_u1 = u1 * g1 - 2.0 * alpha * (x1 + 1j * params.eps1 * y1)
    lap_u2 = u2 * g1 - 2.0 * alpha * (x1 + 1j * params.eps2 * y1)
    lap_v1 = v1 * g2 - 2.0 * alpha * (x2 + 1j * params.gamma1 * y2)
    lap_v2 = v2 * g2 - 2.0 * alpha * (x2 + 1j * params.gamma2 * y2)

    total = lam * (lap_u1 * v2 + u1 * lap_v2) + (1.0 - lam) * (lap_u2 * v1 + u2 * lap_v1)
    return n * total * env


def reduced_lagrangian(
    params: ModelParams, state: VortexState, velocity: VortexVelocity
) -> float:
    """Velocity-linear reduced Lagrangian of the vortex coordinates.

    L = [E*A2*(dX1*Y1 - X1*dY1) + Gamma*A1*(dX2*Y2 - X2*dY2)]/D
        - (Lambda/2)*(2/alpha + R1 + R2)/D
    with the constant trapping term dropped.
    """
    c = derived_coefficients(params)
    a1, a2, d = _geometry_checked(params, state)
    kin = c.E * a2 * (velocity.dx1 * state.y1 - state.x1 * velocity.dy1)
    kin += c.Gamma * a1 * (velocity.dx2 * state.y2 - state.x2 * velocity.dy2)
    return (kin - 0.5 * c.Lambda * _coordinate_sum(params, state)) / d


def _coordinate_sum(params: ModelParams, state: VortexState) -> float:
    return (
        2.0 / params.alpha
        + state.x1 * state.x1
        + state.y1 * state.y1
        + state.x2 * state.x2
        + state.y2 * state.y2
    )


def reduced_hamiltonian(params: ModelParams, state: VortexState) -> float:
    """Reduced Hamiltonian (Lambda/2)*(2/alpha + R1 + R2)/D; always > 0."""
    c = derived_coefficients(params)
    _, _, d = _geometry_checked(params, state)
    return 0.5 * c.Lambda * _coordinate_sum(params, state) / d


def canonical_momenta(params: ModelParams, state: VortexState):
    """Momenta conjugate to (X1, Y1, X2, Y2); velocity-independent.

    The Lagrangian is linear in the velocities, so p_i equals the kinetic
    coefficient of the matching velocity component.
    """
    c = derived_coefficients(params)
    a1, a2, d = _geometry_checked(params, state)
    return (
        c.E * a2 * state.y1 / d,
        -c.E * a2 * state.x1 / d,
        c.Gamma * a1 * state.y2 / d,
        -c.Gamma * a1 * state.x2 / d,
    )


def angular_momenta(params: ModelParams, state: VortexState):
    """Angular momenta s_i = X_i p_{Y_i} - Y_i p_{X_i} of the two vortices."""
    c = derived_coefficients(params)
    a1, a2, d = _geometry_checked(params, state)
    r1 = state.x1 * state.x1 + state.y1 * state.y1
    r2 = state.x2 * state.x2 + state.y2 * state.y2
    return -c.E * a2 * r1 / d, -c.Gamma * a1 * r2 / d


def coupling_g(params: ModelParams, state: VortexState) -> float:
    """Position-dependent coupling of the two angular momenta.

    g = -D / (E * Gamma * R1 * R2).  Undefined when a vortex sits at the
    origin (OriginSingular) or the kinetic weights vanish
    (DegenerateKinetics; entanglement weight at 1/2).
    """
    c = derived_coefficients(params)
    r1 = state.x1 * state.x1 + state.y1 * state.y1
    r2 = state.x2 * state.x2 + state.y2 * state.y2
    if r1 == 0.0 or r2 == 0.0:
        raise OriginSingular("coupling undefined with a vortex at the origin")
    if c.E * c.Gamma == 0.0:
        raise DegenerateKinetics("kinetic weights vanish; coupling undefined")
    _, _, d = _geometry_checked(params, state)
    return -d / (c.E * c.Gamma * r1 * r2)


def coupling_label(g: float) -> str:
    """Spin-model classification of the coupling sign."""
    return "ferro" if g < 0.0 else "antiferro"


def nh_residual(params: ModelParams, state: VortexState) -> float:
    """Residual of the angular-momentum form of the Hamiltonian.

    Evaluates (alpha*Lambda/2)*(E*s1 + Gamma*s2 - 2*g*s1*s2) minus the
    reduced Hamiltonian.  Vanishes identically for a product state
    (lam = 0); for lam != 0 it is generally nonzero and is reported as a
    diagnostic, never asserted away.
    """
    c = derived_coefficients(params)
    s1, s2 = angular_momenta(params, state)
    g = coupling_g(params, state)
    combo = 0.5 * params.alpha * c.Lambda * (c.E * s1 + c.Gamma * s2 - 2.0 * g * s1 * s2)
    return combo - reduced_hamiltonian(params, state)
