"""Compiled-vs-fallback agreement and kernel-level guards."""

import json
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from qvortex import _kernels
from qvortex.model import ModelParams, VortexState, derived_coefficients
from qvortex import dynamics

_CHILD_SCRIPT = textwrap.dedent(
    """
    import json
    import numpy as np
    from qvortex import _kernels
    from qvortex import dynamics
    from qvortex.model import ModelParams, VortexState

    params = ModelParams(lam=0.25)
    traj = dynamics.integrate(params, VortexState(0.3, -0.1, 0.2, 0.25), 12.0)
    print(json.dumps({
        "numba": _kernels.NUMBA_ENABLED,
        "final": traj.states[-1].tolist(),
        "t_final": float(traj.times[-1]),
        "n_accepted": traj.n_accepted,
    }))
    """
)


def _run_child(no_numba: bool) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["QVORTEX_NO_NUMBA"] = "1"
    else:
        env.pop("QVORTEX_NO_NUMBA", None)
    proc = subprocess.run(
        [sys.executable, "-c", _CHILD_SCRIPT], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_fallback_matches_compiled_path():
    compiled = _run_child(no_numba=False)
    fallback = _run_child(no_numba=True)
    assert fallback["numba"] is False
    assert fallback["t_final"] == compiled["t_final"]
    # identical arithmetic: same accepted steps and bitwise-equal states
    assert fallback["n_accepted"] == compiled["n_accepted"]
    assert np.array_equal(np.array(fallback["final"]), np.array(compiled["final"]))


def test_flow_terms_match_model_gradients():
    params = ModelParams(lam=0.3, alpha=2.0)
    c = derived_coefficients(params)
    state = VortexState(0.4, -0.3, 0.2, 0.6)
    f_form, grad_v, d = _kernels.flow_terms(
        state.as_array(), params.alpha, c.Lambda, c.Upsilon, c.mu, c.E, c.Gamma
    )
    from qvortex.model import geometry, reduced_hamiltonian

    _, _, d_model = geometry(params, state.x1, state.y1, state.x2, state.y2)
    assert d == pytest.approx(d_model, rel=1e-15)
    h = 1e-6
    q = state.as_array()
    for i in range(4):
        fwd, bwd = q.copy(), q.copy()
        fwd[i] += h
        bwd[i] -= h
        fd = (
            reduced_hamiltonian(params, VortexState.from_array(fwd))
            - reduced_hamiltonian(params, VortexState.from_array(bwd))
        ) / (2 * h)
        assert grad_v[i] == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_pfaffian_squared_is_determinant():
    params = ModelParams(lam=0.2)
    c = derived_coefficients(params)
    f_form, _, _ = _kernels.flow_terms(
        np.array([0.4, -0.3, 0.2, 0.6]), params.alpha, c.Lambda, c.Upsilon, c.mu, c.E, c.Gamma
    )
    assert _kernels.pfaffian4(f_form) ** 2 == pytest.approx(
        np.linalg.det(f_form), rel=1e-10
    )


def test_rhs_singular_status_on_tight_threshold():
    params = ModelParams(lam=0.2)
    c = derived_coefficients(params)
    _, status = _kernels.flow_rhs(
        np.array([0.1, 0.0, 0.0, 0.0]),
        params.alpha,
        c.Lambda,
        c.Upsilon,
        c.mu,
        c.E,
        c.Gamma,
        1e6,  # absurd threshold forces the singular branch
    )
    assert status == _kernels.STATUS_SINGULAR


def test_step_underflow_status():
    # an initial step below 1e-14 * t_end trips the underflow guard when
    # the controller cannot grow it back fast enough; force it directly
    params = ModelParams(lam=0.0)
    c = derived_coefficients(params)
    ts, qs, hs, na, nr, nf, status = _kernels.integrate_dp54(
        np.array([0.1, 0.0, 0.0, 0.0]),
        1.0,
        1e-10,
        1e-12,
        1e-16,  # h0 below the underflow floor
        1000,
        params.alpha,
        c.Lambda,
        c.Upsilon,
        c.mu,
        c.E,
        c.Gamma,
        1e-12,
    )
    assert status == _kernels.STATUS_UNDERFLOW


def test_max_steps_status():
    params = ModelParams(lam=0.0)
    c = derived_coefficients(params)
    *_, status = _kernels.integrate_dp54(
        np.array([0.1, 0.0, 0.0, 0.0]),
        100.0,
        1e-10,
        1e-12,
        0.01,
        5,
        params.alpha,
        c.Lambda,
        c.Upsilon,
        c.mu,
        c.E,
        c.Gamma,
        1e-12,
    )
    assert status == _kernels.STATUS_MAX_STEPS


def test_storage_growth_beyond_initial_capacity():
    # more than 4096 accepted steps forces the doubling path
    params = ModelParams(lam=0.0)
    traj = dynamics.integrate(
        params, VortexState(0.1, 0.0, -0.1, 0.0), 300.0, rtol=1e-12, atol=1e-14
    )
    assert traj.n_accepted > 4096
    assert np.all(np.diff(traj.times) > 0)
