"""Fixed-vortex reduction, point transformation, and Dirac brackets.

With the second vortex pinned at the origin the reduced Lagrangian
collapses to a single-vortex form; a point transformation to
dimensionless coordinates (xi, eta) turns it into an exact linear
rotation, and the pair (xi, eta) is canonically conjugate under the
Dirac bracket built from the two second-class constraints of the
velocity-linear Lagrangian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainViolation,
    NonPositiveE,
    SingularConstraintMatrix,
)
from .model import ModelParams, derived_coefficients

__all__ = [
    "CanonicalState",
    "ConstraintAlgebra",
    "to_canonical",
    "to_canonical_velocity",
    "from_canonical",
    "canonical_lagrangian",
    "canonical_hamiltonian",
    "canonical_flow",
    "angular_frequency",
    "fixed_vortex_lagrangian",
    "Dual",
    "poisson_bracket",
    "constraint_algebra",
    "dirac_bracket",
    "hamilton_rhs_via_bracket",
]

FD_STEP = 1e-7


@dataclass(frozen=True)
class CanonicalState:
    """Dimensionless canonical pair; valid on xi^2 + eta^2 < 2E/Lambda."""

    xi: float
    eta: float

    @property
    def radius_sq(self) -> float:
        return self.xi * self.xi + self.eta * self.eta


def _positive_e(params: ModelParams) -> float:
    c = derived_coefficients(params)
    if c.E <= 0.0:
        raise NonPositiveE(
            f"canonical transformation requires E > 0, got E = {c.E} "
            "(use the default sign convention eps = (-1, +1))"
        )
    return c.E


def to_canonical(params: ModelParams, x: float, y: float) -> CanonicalState:
    """Point transformation (X, Y) -> (xi, eta)."""
    e = _positive_e(params)
    c = derived_coefficients(params)
    r = x * x + y * y
    w = 2.0 * params.alpha * e / (c.Lambda * (1.0 + params.alpha * r))
    root = math.sqrt(w)
    return CanonicalState(xi=x * root, eta=y * root)


def to_canonical_velocity(
    params: ModelParams, x: float, y: float, dx: float, dy: float
):
    """Chain-rule transport of a velocity through the point transformation."""
    e = _positive_e(params)
    c = derived_coefficients(params)
    r = x * x + y * y
    one_ar = 1.0 + params.alpha * r
    w = 2.0 * params.alpha * e / (c.Lambda * one_ar)
    root = math.sqrt(w)
    dr = 2.0 * (x * dx + y * dy)
    corr = params.alpha * dr / (2.0 * one_ar)
    return root * (dx - x * corr), root * (dy - y * corr)


def from_canonical(params: ModelParams, cstate: CanonicalState):
    """Exact inverse of to_canonical; the radius blows up at the disk edge."""
    e = _positive_e(params)
    c = derived_coefficients(params)
    rho_sq = cstate.radius_sq
    margin = 2.0 * e - c.Lambda * rho_sq
    if margin <= 0.0:
        raise DomainViolation(
            f"xi^2 + eta^2 = {rho_sq} outside the open disk of radius^2 "
            f"{2.0 * e / c.Lambda}"
        )
    scale = math.sqrt(c.Lambda / (params.alpha * margin))
    return cstate.xi * scale, cstate.eta * scale


def canonical_lagrangian(
    params: ModelParams, cstate: CanonicalState, dxi: float, deta: float
) -> float:
    """Transformed Lagrangian (dxi*eta - xi*deta)/2 + (alpha*Lambda/4E) rho^2."""
    c = derived_coefficients(params)
    e = _positive_e(params)
    return 0.5 * (dxi * cstate.eta - cstate.xi * deta) + (
        params.alpha * c.Lambda / (4.0 * e)
    ) * cstate.radius_sq


def canonical_hamiltonian(params: ModelParams, cstate: CanonicalState) -> float:
    """Transformed Hamiltonian -alpha*Lambda*(xi^2 + eta^2)/(4E); <= 0 on the disk."""
    c = derived_coefficients(params)
    e = _positive_e(params)
    return -params.alpha * c.Lambda * cstate.radius_sq / (4.0 * e)


def angular_frequency(params: ModelParams) -> float:
    """Rotation frequency omega = alpha*Lambda/(2E) of the canonical flow."""
    e = _positive_e(params)
    c = derived_coefficients(params)
    return params.alpha * c.Lambda / (2.0 * e)


def canonical_flow(params: ModelParams, cstate0: CanonicalState, t: float) -> CanonicalState:
    """Exact flow: counterclockwise rotation by omega * t."""
    theta = angular_frequency(params) * t
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    return CanonicalState(
        xi=cstate0.xi * cos_t - cstate0.eta * sin_t,
        eta=cstate0.xi * sin_t + cstate0.eta * cos_t,
    )


def fixed_vortex_lagrangian(
    params: ModelParams, x: float, y: float, dx: float, dy: float
) -> float:
    """Reduced Lagrangian with the second vortex pinned at the origin.

    Equals the full reduced Lagrangian evaluated at (X, Y, 0, 0) plus the
    constant alpha/2 (an additive constant dropped in the reduction).
    """
    c = derived_coefficients(params)
    one_ar = 1.0 + params.alpha * (x * x + y * y)
    kinetic = c.E * params.alpha * (dx * y - x * dy) / (c.Lambda * one_ar)
    return kinetic - 0.5 * params.alpha / one_ar


# ---------------------------------------------------------------------------
# Dirac bracket machinery
#
# Observables are callables f(xi, p_xi, eta, p_eta) -> real.  Partial
# derivatives are taken with forward-mode dual numbers when the callable
# supports them, falling back to central finite differences otherwise.
# ---------------------------------------------------------------------------


class Dual:
    """Forward-mode dual number carrying a 4-gradient."""

    __slots__ = ("value", "grad")

    def __init__(self, value: float, grad):
        self.value = float(value)
        self.grad = np.asarray(grad, dtype=np.float64)

    @classmethod
    def seed(cls, values: Sequence[float]):
        eye = np.eye(len(values))
        return [cls(v, eye[i]) for i, v in enumerate(values)]

    def _lift(self, other):
        if isinstance(other, Dual):
            return other
        return Dual(float(other), np.zeros_like(self.grad))

    def __add__(self, other):
        other = self._lift(other)
        return Dual(self.value + other.value, self.grad + other.grad)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, -self.grad)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        return Dual(
            self.value * other.value,
            self.value * other.grad + other.value * self.grad,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        inv = 1.0 / other.value
        return Dual(
            self.value * inv,
            (self.grad - self.value * inv * other.grad) * inv,
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, exponent):
        if isinstance(exponent, Dual):
            raise TypeError("dual exponents are not supported")
        v = self.value**exponent
        return Dual(v, exponent * self.value ** (exponent - 1) * self.grad)

    def __float__(self):
        raise TypeError("Dual cannot be coerced to float")  # keeps FD fallback honest

    def sqrt(self):
        root = math.sqrt(self.value)
        return Dual(root, 0.5 / root * self.grad)

    def exp(self):
        v = math.exp(self.value)
        return Dual(v, v * self.grad)

    def log(self):
        return Dual(math.log(self.value), self.grad / self.value)

    def sin(self):
        return Dual(math.sin(self.value), math.cos(self.value) * self.grad)

    def cos(self):
        return Dual(math.cos(self.value), -math.sin(self.value) * self.grad)


Observable = Callable[[float, float, float, float], float]


def _value_and_gradient(f: Observable, point: np.ndarray):
    try:
        result = f(*Dual.seed(point))
    except TypeError:
        return _fd_gradient(f, point)
    if isinstance(result, Dual):
        return result.value, result.grad
    return float(result), np.zeros(4)  # constant observable


def _fd_gradient(f: Observable, point: np.ndarray, step: float = FD_STEP):
    value = float(f(*point))
    grad = np.empty(4)
    for i in range(4):
        fwd = point.copy()
        bwd = point.copy()
        fwd[i] += step
        bwd[i] -= step
        grad[i] = (float(f(*fwd)) - float(f(*bwd))) / (2.0 * step)
    return value, grad


def poisson_bracket(f: Observable, g: Observable, point) -> float:
    """{f, g}_P over the canonical pairs (xi, p_xi) and (eta, p_eta).

    `point` is (xi, p_xi, eta, p_eta).
    """
    point = np.asarray(point, dtype=np.float64)
    _, df = _value_and_gradient(f, point)
    _, dg = _value_and_gradient(g, point)
    # gradient layout: [d/dxi, d/dp_xi, d/deta, d/dp_eta]
    return float(df[0] * dg[1] - df[1] * dg[0] + df[2] * dg[3] - df[3] * dg[2])


def _chi_xi(xi, p_xi, eta, p_eta):
    return p_xi - eta / 2.0


def _chi_eta(xi, p_xi, eta, p_eta):
    return p_eta + xi / 2.0


@dataclass(frozen=True)
class ConstraintAlgebra:
    """Second-class constraint data at a phase-space point."""

    chi_xi: float
    chi_eta: float
    c_matrix: np.ndarray
    c_inverse: np.ndarray


def constraint_algebra(point) -> ConstraintAlgebra:
    """Constraint residuals and the bracket matrix C_ab = {chi_a, chi_b}_P."""
    point = np.asarray(point, dtype=np.float64)
    chis = (_chi_xi, _chi_eta)
    c_matrix = np.empty((2, 2))
    for a in range(2):
        for b in range(2):
            c_matrix[a, b] = poisson_bracket(chis[a], chis[b], point)
    det = c_matrix[0, 0] * c_matrix[1, 1] - c_matrix[0, 1] * c_matrix[1, 0]
    if abs(det) < 1e-12:
        raise SingularConstraintMatrix(f"constraint matrix determinant {det}")
    c_inverse = (
        np.array([[c_matrix[1, 1], -c_matrix[0, 1]], [-c_matrix[1, 0], c_matrix[0, 0]]])
        / det
    )
    return ConstraintAlgebra(
        chi_xi=float(_chi_xi(*point)),
        chi_eta=float(_chi_eta(*point)),
        c_matrix=c_matrix,
        c_inverse=c_inverse,
    )


def dirac_bracket(f: Observable, g: Observable, point=(0.0, 0.0, 0.0, 0.0)) -> float:
    """{f, g}_D = {f, g}_P - sum_ab {f, chi_a}_P (C^-1)_ab {chi_b, g}_P."""
    point = np.asarray(point, dtype=np.float64)
    algebra = constraint_algebra(point)
    chis = (_chi_xi, _chi_eta)
    value = poisson_bracket(f, g, point)
    for a in range(2):
        fa = poisson_bracket(f, chis[a], point)
        for b in range(2):
            value -= fa * algebra.c_inverse[a, b] * poisson_bracket(chis[b], g, point)
    return value


def hamilton_rhs_via_bracket(params: ModelParams, cstate: CanonicalState):
    """(dxi/dt, deta/dt) = ({xi, H}_D, {eta, H}_D) on the constraint surface."""
    c = derived_coefficients(params)
    e = _positive_e(params)
    coef = -params.alpha * c.Lambda / (4.0 * e)

    def hamiltonian(xi, p_xi, eta, p_eta):
        return coef * (xi * xi + eta * eta)

    def coord_xi(xi, p_xi, eta, p_eta):
        return xi

    def coord_eta(xi, p_xi, eta, p_eta):
        return eta

    point = (cstate.xi, cstate.eta / 2.0, cstate.eta, -cstate.xi / 2.0)
    return (
        dirac_bracket(coord_xi, hamiltonian, point),
        dirac_bracket(coord_eta, hamiltonian, point),
    )
