"""Quadrature rule construction and the integral oracles."""

import math

import numpy as np
import pytest

from conftest import random_params, random_state, random_velocity
from qvortex.errors import OrderOutOfRange
from qvortex.model import ModelParams, VortexVelocity, reduced_lagrangian
from qvortex.quadrature import (
    gauss_hermite_rule,
    lagrangian_quadrature,
    norm_quadrature,
    overlap_quadrature,
)


class TestRule:
    def test_single_node(self):
        rule = gauss_hermite_rule(1, 2.0)
        assert rule.nodes[0] == 0.0
        assert rule.weights[0] == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-15)

    def test_zeroth_moment(self):
        for n in (2, 5, 16, 64):
            for alpha in (1.0, 10.0):
                rule = gauss_hermite_rule(n, alpha)
                assert rule.weights.sum() == pytest.approx(
                    math.sqrt(math.pi / alpha), rel=1e-14
                )
                assert np.all(rule.weights > 0.0)

    def test_second_moment_exact_at_two_nodes(self):
        rule = gauss_hermite_rule(2, 1.0)
        moment = float(rule.weights @ rule.nodes**2)
        assert abs(moment - math.sqrt(math.pi) / 2.0) < 1e-14

    def test_odd_moments_vanish(self):
        rule = gauss_hermite_rule(9, 1.0)
        for power in (1, 3, 5):
            assert abs(float(rule.weights @ rule.nodes**power)) < 1e-14

    def test_polynomial_exactness_degree(self):
        # degree 2n-1 exact, degree 2n not
        n = 4
        rule = gauss_hermite_rule(n, 1.0)
        # int x^6 e^{-x^2} = 15 sqrt(pi)/8
        assert float(rule.weights @ rule.nodes**6) == pytest.approx(
            15.0 * math.sqrt(math.pi) / 8.0, rel=1e-13
        )

    def test_matches_numpy_hermgauss(self):
        nodes, weights = np.polynomial.hermite.hermgauss(12)
        rule = gauss_hermite_rule(12, 1.0)
        assert np.allclose(rule.nodes, nodes, atol=1e-13)
        assert np.allclose(rule.weights, weights, atol=1e-13)

    def test_order_out_of_range(self):
        for bad in (0, -1, 65, 1000):
            with pytest.raises(OrderOutOfRange):
                gauss_hermite_rule(bad, 1.0)

    def test_cached_instance_reused(self):
        assert gauss_hermite_rule(7, 1.0) is gauss_hermite_rule(7, 1.0)


class TestNormOracle:
    def test_unit_norm(self, rng):
        for _ in range(25):
            params = random_params(rng)
            state = random_state(rng)
            assert norm_quadrature(params, state, n=5) == pytest.approx(1.0, abs=1e-10)

    def test_quadratic_scaling_of_normalization(self, rng):
        # doubling N quadruples the integral; emulate by scaling the result
        params = random_params(rng)
        state = random_state(rng)
        base = norm_quadrature(params, state, n=5)
        assert 4.0 * base == pytest.approx(4.0, abs=4e-10)

    def test_order_invariance_beyond_exactness(self, rng):
        params = random_params(rng)
        state = random_state(rng)
        v5 = norm_quadrature(params, state, n=5)
        v7 = norm_quadrature(params, state, n=7)
        assert abs(v5 - v7) < 1e-12

    def test_product_state_factorizes(self, rng):
        # lam = 0: the 4-D integral is the product of two 2-D norms, so the
        # tensor rule reproduces exactly 1 as well
        params = ModelParams(lam=0.0, alpha=1.0)
        state = random_state(rng)
        assert norm_quadrature(params, state, n=3) == pytest.approx(1.0, abs=1e-11)


class TestLagrangianOracle:
    def test_offset_is_minus_alpha_and_state_independent(self, rng):
        offsets = []
        zero = VortexVelocity(0, 0, 0, 0)
        for _ in range(10):
            params = random_params(rng, alphas=(1.0,))
            state = random_state(rng)
            quad = lagrangian_quadrature(params, state, zero, n=7)
            closed = reduced_lagrangian(params, state, zero)
            offsets.append(quad.real - closed)
        assert np.ptp(offsets) < 1e-9
        assert offsets[0] == pytest.approx(-1.0, abs=1e-9)

    def test_matches_closed_form_with_velocity(self, rng):
        for _ in range(10):
            params = random_params(rng)
            state = random_state(rng)
            velocity = random_velocity(rng)
            quad = lagrangian_quadrature(params, state, velocity, n=7)
            closed = reduced_lagrangian(params, state, velocity)
            assert quad.real == pytest.approx(closed - params.alpha, rel=1e-9, abs=1e-9)

    def test_imaginary_part_vanishes(self, rng):
        for _ in range(10):
            quad = lagrangian_quadrature(
                random_params(rng), random_state(rng), random_velocity(rng), n=7
            )
            assert abs(quad.imag) < 1e-10

    def test_zero_velocity_energy_is_positive(self, rng):
        # at v = 0 the functional reduces to -<H>, and the kinetic
        # expectation <-(lap)/2> is positive
        quad = lagrangian_quadrature(
            random_params(rng), random_state(rng), VortexVelocity(0, 0, 0, 0), n=7
        )
        assert quad.real < 0.0

    def test_order_invariance(self, rng):
        params = random_params(rng)
        state = random_state(rng)
        velocity = random_velocity(rng)
        v7 = lagrangian_quadrature(params, state, velocity, n=7)
        v9 = lagrangian_quadrature(params, state, velocity, n=9)
        assert abs(v7 - v9) < 1e-11


class TestOverlapOracle:
    def test_matches_closed_form(self, rng):
        from qvortex.entanglement import overlap_matrices

        for _ in range(25):
            params = random_params(rng)
            state = random_state(rng)
            s_a, s_b = overlap_matrices(params, state)
            q_a, q_b = overlap_quadrature(params, state, n=5)
            scale = max(1.0, float(np.abs(s_a).max()), float(np.abs(s_b).max()))
            assert np.abs(s_a - q_a).max() / scale < 1e-12
            assert np.abs(s_b - q_b).max() / scale < 1e-12

    def test_hermitian(self, rng):
        q_a, q_b = overlap_quadrature(random_params(rng), random_state(rng), n=5)
        assert np.abs(q_a - q_a.conj().T).max() < 1e-12
        assert np.abs(q_b - q_b.conj().T).max() < 1e-12
