"""Point transformation, canonical flow, and the Dirac bracket algebra."""

import math

import numpy as np
import pytest

from qvortex.canonical import (
    CanonicalState,
    angular_frequency,
    canonical_flow,
    canonical_hamiltonian,
    canonical_lagrangian,
    constraint_algebra,
    dirac_bracket,
    fixed_vortex_lagrangian,
    from_canonical,
    hamilton_rhs_via_bracket,
    poisson_bracket,
    to_canonical,
    to_canonical_velocity,
)
from qvortex.errors import DomainViolation, NonPositiveE
from qvortex.model import (
    ModelParams,
    VortexState,
    VortexVelocity,
    derived_coefficients,
    reduced_lagrangian,
)


def _xi(xi, p_xi, eta, p_eta):
    return xi


def _eta(xi, p_xi, eta, p_eta):
    return eta


class TestPointTransformation:
    def test_origin_maps_to_origin(self):
        cs = to_canonical(ModelParams(lam=0.2), 0.0, 0.0)
        assert (cs.xi, cs.eta) == (0.0, 0.0)
        assert from_canonical(ModelParams(lam=0.2), cs) == (0.0, 0.0)

    def test_round_trip(self, rng):
        for _ in range(100):
            params = ModelParams(
                lam=float(rng.uniform(0, 0.45)), alpha=float(rng.choice([1.0, 10.0]))
            )
            x, y = rng.uniform(-2, 2, 2)
            xb, yb = from_canonical(params, to_canonical(params, x, y))
            assert abs(xb - x) < 1e-12 and abs(yb - y) < 1e-12

    def test_image_inside_disk(self, rng):
        for _ in range(100):
            params = ModelParams(lam=float(rng.uniform(0, 0.45)))
            c = derived_coefficients(params)
            x, y = rng.uniform(-5, 5, 2)
            cs = to_canonical(params, x, y)
            assert cs.radius_sq < 2.0 * c.E / c.Lambda

    def test_jacobian_positive(self, rng):
        # det d(xi,eta)/d(X,Y) = 2*alpha*E / (Lambda*(1+alpha*R)^2) > 0,
        # checked against finite differences
        params = ModelParams(lam=0.3, alpha=2.0)
        c = derived_coefficients(params)
        h = 1e-6
        for _ in range(20):
            x, y = rng.uniform(-1.5, 1.5, 2)
            jac = np.empty((2, 2))
            for col, (dx, dy) in enumerate([(h, 0.0), (0.0, h)]):
                plus = to_canonical(params, x + dx, y + dy)
                minus = to_canonical(params, x - dx, y - dy)
                jac[0, col] = (plus.xi - minus.xi) / (2 * h)
                jac[1, col] = (plus.eta - minus.eta) / (2 * h)
            det = np.linalg.det(jac)
            r = x * x + y * y
            expected = 2.0 * params.alpha * c.E / (c.Lambda * (1.0 + params.alpha * r) ** 2)
            assert det > 0.0
            assert det == pytest.approx(expected, rel=1e-5)

    def test_boundary_blowup(self):
        params = ModelParams(lam=0.0, alpha=1.0)
        c = derived_coefficients(params)
        rho_sq = 2.0 * c.E / c.Lambda - 1e-12
        x, y = from_canonical(params, CanonicalState(math.sqrt(rho_sq), 0.0))
        assert x * x + y * y > 1e6

    def test_domain_violation(self):
        params = ModelParams(lam=0.0)
        with pytest.raises(DomainViolation):
            from_canonical(params, CanonicalState(2.0, 0.0))

    def test_nonpositive_e_rejected(self):
        flipped = ModelParams(lam=0.1, eps1=1, eps2=-1)
        with pytest.raises(NonPositiveE):
            to_canonical(flipped, 0.1, 0.1)
        with pytest.raises(NonPositiveE):
            angular_frequency(flipped)


class TestTransformedLagrangian:
    def test_zero_at_rest_origin(self):
        params = ModelParams(lam=0.1)
        assert canonical_lagrangian(params, CanonicalState(0.0, 0.0), 0.0, 0.0) == 0.0

    def test_linear_in_velocity(self, rng):
        params = ModelParams(lam=0.2)
        cs = CanonicalState(0.3, -0.2)
        base = canonical_lagrangian(params, cs, 0.0, 0.0)
        lin = canonical_lagrangian(params, cs, 0.4, -0.7) - base
        scaled = canonical_lagrangian(params, cs, 3 * 0.4, 3 * -0.7) - base
        assert scaled == pytest.approx(3 * lin, rel=1e-14)

    def test_pull_back_constant_alpha_half(self, rng):
        for _ in range(100):
            params = ModelParams(
                lam=float(rng.uniform(0, 0.45)), alpha=float(rng.choice([1.0, 10.0]))
            )
            x, y = rng.uniform(-1.5, 1.5, 2)
            dx, dy = rng.uniform(-1, 1, 2)
            cs = to_canonical(params, x, y)
            dxi, deta = to_canonical_velocity(params, x, y, dx, dy)
            transformed = canonical_lagrangian(params, cs, dxi, deta)
            fixed = fixed_vortex_lagrangian(params, x, y, dx, dy)
            assert transformed - fixed == pytest.approx(0.5 * params.alpha, abs=1e-10)


class TestTransformedHamiltonian:
    def test_zero_at_origin_and_nonpositive(self, rng):
        params = ModelParams(lam=0.2)
        assert canonical_hamiltonian(params, CanonicalState(0.0, 0.0)) == 0.0
        c = derived_coefficients(params)
        for _ in range(50):
            rho = math.sqrt(2.0 * c.E / c.Lambda) * float(rng.uniform(0, 0.999))
            theta = float(rng.uniform(0, 2 * math.pi))
            cs = CanonicalState(rho * math.cos(theta), rho * math.sin(theta))
            assert canonical_hamiltonian(params, cs) <= 0.0

    def test_conserved_under_flow(self):
        params = ModelParams(lam=0.25)
        cs = CanonicalState(0.4, -0.3)
        h0 = canonical_hamiltonian(params, cs)
        for t in (0.5, 3.0, 17.0):
            assert canonical_hamiltonian(params, canonical_flow(params, cs, t)) == pytest.approx(
                h0, rel=1e-14
            )

    def test_matches_fixed_vortex_up_to_constant(self, rng):
        for _ in range(50):
            params = ModelParams(lam=float(rng.uniform(0, 0.45)))
            x, y = rng.uniform(-1.5, 1.5, 2)
            cs = to_canonical(params, x, y)
            h_fixed = -fixed_vortex_lagrangian(params, x, y, 0.0, 0.0)
            assert canonical_hamiltonian(params, cs) + 0.5 * params.alpha == pytest.approx(
                h_fixed, rel=1e-12
            )


class TestCanonicalFlow:
    def test_identity_at_zero_time(self):
        params = ModelParams(lam=0.1)
        cs = CanonicalState(0.2, 0.3)
        assert canonical_flow(params, cs, 0.0) == cs

    def test_product_state_period(self):
        # omega = 1/2 at lam = 0, alpha = 1, so the period is 4*pi
        params = ModelParams(lam=0.0, alpha=1.0)
        cs = CanonicalState(0.5, -0.1)
        end = canonical_flow(params, cs, 4.0 * math.pi)
        assert end.xi == pytest.approx(cs.xi, abs=1e-14)
        assert end.eta == pytest.approx(cs.eta, abs=1e-14)

    def test_radius_invariant(self, rng):
        params = ModelParams(lam=0.3)
        cs = CanonicalState(0.2, 0.1)
        for t in rng.uniform(0, 50, 20):
            moved = canonical_flow(params, cs, float(t))
            assert moved.radius_sq == pytest.approx(cs.radius_sq, rel=1e-14)


class TestAngularFrequency:
    def test_reference_values(self):
        assert angular_frequency(ModelParams(lam=0.0, alpha=1.0)) == 0.5
        assert angular_frequency(ModelParams(lam=0.25, alpha=1.0)) == 0.625
        assert angular_frequency(ModelParams(lam=0.1, alpha=1.0)) == pytest.approx(0.5125)
        assert angular_frequency(ModelParams(lam=0.0, alpha=10.0)) == 5.0

    def test_monotone_and_diverging(self):
        grid = np.linspace(0.0, 0.499, 1000)
        omegas = [angular_frequency(ModelParams(lam=float(l))) for l in grid]
        assert np.all(np.diff(omegas) > 0.0)
        assert angular_frequency(ModelParams(lam=0.4999)) > 1000 * omegas[0]


class TestDiracBracket:
    def test_coordinate_bracket_exactly_one(self):
        assert dirac_bracket(_xi, _eta) == 1.0

    def test_antisymmetry_and_self_bracket(self):
        assert dirac_bracket(_xi, _xi) == 0.0
        assert dirac_bracket(_eta, _xi) == -1.0

    def test_constraint_matrix(self):
        algebra = constraint_algebra((0.3, 0.05, -0.2, 0.45))
        assert np.array_equal(algebra.c_matrix, np.array([[0.0, -1.0], [1.0, 0.0]]))
        assert np.array_equal(algebra.c_inverse, np.array([[0.0, 1.0], [-1.0, 0.0]]))

    def test_constraints_vanish_on_surface(self):
        xi, eta = 0.4, -0.7
        algebra = constraint_algebra((xi, eta / 2, eta, -xi / 2))
        assert algebra.chi_xi == 0.0 and algebra.chi_eta == 0.0

    def test_poisson_canonical_pairs(self):
        assert poisson_bracket(_xi, lambda xi, p_xi, eta, p_eta: p_xi, (0.1, 0.2, 0.3, 0.4)) == 1.0
        assert poisson_bracket(_xi, lambda xi, p_xi, eta, p_eta: p_eta, (0.1, 0.2, 0.3, 0.4)) == 0.0

    def test_radius_commutes_with_hamiltonian(self):
        params = ModelParams(lam=0.2)
        c = derived_coefficients(params)
        coef = -params.alpha * c.Lambda / (4.0 * c.E)

        def radius_sq(xi, p_xi, eta, p_eta):
            return xi * xi + eta * eta

        def hamiltonian(xi, p_xi, eta, p_eta):
            return coef * (xi * xi + eta * eta)

        value = dirac_bracket(radius_sq, hamiltonian, (0.3, -0.1, 0.2, -0.15))
        assert abs(value) < 1e-14

    def test_hamilton_equations_match_linear_flow(self, rng):
        for _ in range(100):
            params = ModelParams(
                lam=float(rng.uniform(0, 0.45)), alpha=float(rng.choice([1.0, 10.0]))
            )
            omega = angular_frequency(params)
            cs = CanonicalState(*rng.uniform(-0.5, 0.5, 2))
            dxi, deta = hamilton_rhs_via_bracket(params, cs)
            assert abs(dxi + omega * cs.eta) < 1e-10
            assert abs(deta - omega * cs.xi) < 1e-10

    def test_finite_difference_fallback(self):
        # math.sqrt defeats the dual numbers, forcing the FD path
        def f(xi, p_xi, eta, p_eta):
            return math.sqrt(1.0 + xi * xi)

        value = dirac_bracket(f, _eta, (0.3, 0.0, 0.1, 0.0))
        expected = 0.3 / math.sqrt(1.09)  # d f / d xi = {f, eta}_D at this point
        assert value == pytest.approx(expected, abs=1e-8)

    def test_coordinate_bracket_with_fd_partials(self):
        # float() coercion rejects duals, so these run on the FD path
        def fd_xi(xi, p_xi, eta, p_eta):
            return float(xi)

        def fd_eta(xi, p_xi, eta, p_eta):
            return float(eta)

        value = dirac_bracket(fd_xi, fd_eta, (0.2, -0.4, 0.7, 0.1))
        assert value == pytest.approx(1.0, abs=1e-8)


class TestFixedVortexLagrangian:
    def test_rest_origin_value(self):
        for alpha in (1.0, 4.0):
            params = ModelParams(lam=0.1, alpha=alpha)
            assert fixed_vortex_lagrangian(params, 0.0, 0.0, 0.0, 0.0) == pytest.approx(
                -alpha / 2.0
            )

    def test_specializes_full_lagrangian_up_to_constant(self, rng):
        for _ in range(100):
            params = ModelParams(
                lam=float(rng.uniform(0, 0.45)), alpha=float(rng.choice([1.0, 10.0]))
            )
            x, y = rng.uniform(-1.5, 1.5, 2)
            dx, dy = rng.uniform(-1, 1, 2)
            full = reduced_lagrangian(
                params, VortexState(x, y, 0.0, 0.0), VortexVelocity(dx, dy, 0.0, 0.0)
            )
            fixed = fixed_vortex_lagrangian(params, x, y, dx, dy)
            assert fixed - full == pytest.approx(0.5 * params.alpha, abs=1e-12)

    def test_linear_in_velocity(self):
        params = ModelParams(lam=0.2)
        base = fixed_vortex_lagrangian(params, 0.3, -0.4, 0.0, 0.0)
        lin = fixed_vortex_lagrangian(params, 0.3, -0.4, 0.2, 0.5) - base
        scaled = fixed_vortex_lagrangian(params, 0.3, -0.4, 0.4, 1.0) - base
        assert scaled == pytest.approx(2 * lin, rel=1e-14)
