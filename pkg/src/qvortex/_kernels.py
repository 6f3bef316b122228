"""Hot numeric kernels: symplectic flow evaluation and adaptive integration.

The right-hand side of the vortex equations of motion (assemble the
kinetic two-form F and the potential gradient, solve F*qdot = gradV) and
the embedded Dormand-Prince 5(4) stepper live here.  They are compiled
with numba's @njit when available; setting the environment variable
QVORTEX_NO_NUMBA=1 (or running without numba installed) selects the pure
numpy/Python fallback, which runs the identical source uncompiled.

``python -m qvortex.benchmarks`` times the two paths against each other.

Status codes shared by kernels and wrappers:
    0 -- success
    1 -- singular kinetic two-form (|det F| below threshold)
    2 -- non-positive common denominator
    3 -- step size underflow
    4 -- step budget exhausted
"""

import os

import numpy as np

STATUS_OK = 0
STATUS_SINGULAR = 1
STATUS_BAD_DENOMINATOR = 2
STATUS_UNDERFLOW = 3
STATUS_MAX_STEPS = 4

NUMBA_ENABLED = os.environ.get("QVORTEX_NO_NUMBA", "").strip() not in ("1", "true", "yes")
if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - exercised via env flag instead
        NUMBA_ENABLED = False

if not NUMBA_ENABLED:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# Dormand-Prince 5(4) tableau (FSAL).
_DP_C2 = 1.0 / 5.0
_DP_C3 = 3.0 / 10.0
_DP_C4 = 4.0 / 5.0
_DP_C5 = 8.0 / 9.0

_DP_A21 = 1.0 / 5.0
_DP_A31 = 3.0 / 40.0
_DP_A32 = 9.0 / 40.0
_DP_A41 = 44.0 / 45.0
_DP_A42 = -56.0 / 15.0
_DP_A43 = 32.0 / 9.0
_DP_A51 = 19372.0 / 6561.0
_DP_A52 = -25360.0 / 2187.0
_DP_A53 = 64448.0 / 6561.0
_DP_A54 = -212.0 / 729.0
_DP_A61 = 9017.0 / 3168.0
_DP_A62 = -355.0 / 33.0
_DP_A63 = 46732.0 / 5247.0
_DP_A64 = 49.0 / 176.0
_DP_A65 = -5103.0 / 18656.0

_DP_B1 = 35.0 / 384.0
_DP_B3 = 500.0 / 1113.0
_DP_B4 = 125.0 / 192.0
_DP_B5 = -2187.0 / 6784.0
_DP_B6 = 11.0 / 84.0

# b - b_hat (5th order propagation minus 4th order estimate)
_DP_E1 = 71.0 / 57600.0
_DP_E3 = -71.0 / 16695.0
_DP_E4 = 71.0 / 1920.0
_DP_E5 = -17253.0 / 339200.0
_DP_E6 = 22.0 / 525.0
_DP_E7 = -1.0 / 40.0


@njit(cache=True)
def flow_terms(q, alpha, lam_c, ups_c, mu_c, e_c, gam_c):
    """Kinetic two-form F, potential gradient, and denominator D at q.

    F[i, j] = d_i a_j - d_j a_i for the kinetic coefficient vector a of
    the velocity-linear Lagrangian; the potential equals the reduced
    Hamiltonian.  Antisymmetry of F is exact by construction.
    """
    x1 = q[0]
    y1 = q[1]
    x2 = q[2]
    y2 = q[3]
    inv_a = 1.0 / alpha
    r1 = x1 * x1 + y1 * y1
    r2 = x2 * x2 + y2 * y2
    a1 = inv_a + r1
    a2 = inv_a + r2
    p1 = x1 * x1 - y1 * y1
    p2 = x2 * x2 - y2 * y2
    q1 = x1 * y1
    q2 = x2 * y2
    d = lam_c * a1 * a2 + ups_c * (p1 * p2 + mu_c * q1 * q2)

    grad_d = np.empty(4)
    grad_d[0] = 2.0 * x1 * (lam_c * a2 + ups_c * p2) + ups_c * mu_c * y1 * q2
    grad_d[1] = 2.0 * y1 * (lam_c * a2 - ups_c * p2) + ups_c * mu_c * x1 * q2
    grad_d[2] = 2.0 * x2 * (lam_c * a1 + ups_c * p1) + ups_c * mu_c * q1 * y2
    grad_d[3] = 2.0 * y2 * (lam_c * a1 - ups_c * p1) + ups_c * mu_c * q1 * x2

    # potential V = (Lambda/2) * B / D with B = 2/alpha + R1 + R2
    b = 2.0 * inv_a + r1 + r2
    grad_b = np.empty(4)
    grad_b[0] = 2.0 * x1
    grad_b[1] = 2.0 * y1
    grad_b[2] = 2.0 * x2
    grad_b[3] = 2.0 * y2
    d_sq = d * d
    grad_v = np.empty(4)
    for i in range(4):
        grad_v[i] = 0.5 * lam_c * (grad_b[i] * d - b * grad_d[i]) / d_sq

    # kinetic coefficients a = n/D and their numerator partials
    n_vec = np.empty(4)
    n_vec[0] = e_c * a2 * y1
    n_vec[1] = -e_c * a2 * x1
    n_vec[2] = gam_c * a1 * y2
    n_vec[3] = -gam_c * a1 * x2

    dn = np.zeros((4, 4))  # dn[i, j] = d n_j / d q_i
    dn[1, 0] = e_c * a2
    dn[2, 0] = 2.0 * e_c * x2 * y1
    dn[3, 0] = 2.0 * e_c * y2 * y1
    dn[0, 1] = -e_c * a2
    dn[2, 1] = -2.0 * e_c * x2 * x1
    dn[3, 1] = -2.0 * e_c * y2 * x1
    dn[0, 2] = 2.0 * gam_c * x1 * y2
    dn[1, 2] = 2.0 * gam_c * y1 * y2
    dn[3, 2] = gam_c * a1
    dn[0, 3] = -2.0 * gam_c * x1 * x2
    dn[1, 3] = -2.0 * gam_c * y1 * x2
    dn[2, 3] = -gam_c * a1

    grad_a = np.empty((4, 4))  # grad_a[i, j] = d a_j / d q_i
    for i in range(4):
        for j in range(4):
            grad_a[i, j] = (dn[i, j] * d - n_vec[j] * grad_d[i]) / d_sq

    f_form = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            f_form[i, j] = grad_a[i, j] - grad_a[j, i]

    return f_form, grad_v, d


@njit(cache=True)
def pfaffian4(f_form):
    """Pfaffian of a 4x4 antisymmetric matrix; det F = Pf(F)^2."""
    return (
        f_form[0, 1] * f_form[2, 3]
        - f_form[0, 2] * f_form[1, 3]
        + f_form[0, 3] * f_form[1, 2]
    )


@njit(cache=True)
def flow_rhs(q, alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol):
    """Velocity field qdot solving F*qdot = gradV, with a status code."""
    f_form, grad_v, d = flow_terms(q, alpha, lam_c, ups_c, mu_c, e_c, gam_c)
    qdot = np.zeros(4)
    if d <= 0.0:
        return qdot, STATUS_BAD_DENOMINATOR
    fro_sq = 0.0
    for i in range(4):
        for j in range(4):
            fro_sq += f_form[i, j] * f_form[i, j]
    det = pfaffian4(f_form) ** 2
    if det < det_tol * fro_sq * fro_sq:
        return qdot, STATUS_SINGULAR
    qdot = np.linalg.solve(f_form, grad_v)
    return qdot, STATUS_OK


@njit(cache=True)
def integrate_dp54(
    q0,
    t_end,
    rtol,
    atol,
    h0,
    max_steps,
    alpha,
    lam_c,
    ups_c,
    mu_c,
    e_c,
    gam_c,
    det_tol,
):
    """Adaptive Dormand-Prince 5(4) integration of the vortex flow.

    Integrates from t = 0 to t_end (either sign).  Returns
    (times, states, steps, n_accepted, n_rejected, n_rhs, status) with one
    row per accepted step (the initial state included; steps[0] = 0).
    """
    direction = 1.0 if t_end > 0.0 else -1.0
    cap = 4096
    ts = np.empty(cap)
    qs = np.empty((cap, 4))
    hs = np.empty(cap)
    ts[0] = 0.0
    qs[0] = q0
    hs[0] = 0.0
    count = 1

    t = 0.0
    y = q0.copy()
    h = abs(h0) * direction
    n_accept = 0
    n_reject = 0
    n_rhs = 1
    status = STATUS_MAX_STEPS

    k1, st = flow_rhs(y, alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol)
    if st != STATUS_OK:
        return ts[:count], qs[:count], hs[:count], n_accept, n_reject, n_rhs, st

    min_step = 1e-14 * abs(t_end)
    for _ in range(max_steps):
        if (t - t_end) * direction >= 0.0:
            status = STATUS_OK
            break
        final_step = (t + h - t_end) * direction > 0.0
        if final_step:
            h = t_end - t
        if abs(h) < min_step:
            status = STATUS_UNDERFLOW
            break

        k2, st = flow_rhs(
            y + h * (_DP_A21 * k1), alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol
        )
        if st != STATUS_OK:
            status = st
            break
        k3, st = flow_rhs(
            y + h * (_DP_A31 * k1 + _DP_A32 * k2),
            alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol,
        )
        if st != STATUS_OK:
            status = st
            break
        k4, st = flow_rhs(
            y + h * (_DP_A41 * k1 + _DP_A42 * k2 + _DP_A43 * k3),
            alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol,
        )
        if st != STATUS_OK:
            status = st
            break
        k5, st = flow_rhs(
            y + h * (_DP_A51 * k1 + _DP_A52 * k2 + _DP_A53 * k3 + _DP_A54 * k4),
            alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol,
        )
        if st != STATUS_OK:
            status = st
            break
        k6, st = flow_rhs(
            y + h * (_DP_A61 * k1 + _DP_A62 * k2 + _DP_A63 * k3 + _DP_A64 * k4 + _DP_A65 * k5),
            alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol,
        )
        if st != STATUS_OK:
            status = st
            break

        y_new = y + h * (
            _DP_B1 * k1 + _DP_B3 * k3 + _DP_B4 * k4 + _DP_B5 * k5 + _DP_B6 * k6
        )
        k7, st = flow_rhs(y_new, alpha, lam_c, ups_c, mu_c, e_c, gam_c, det_tol)
        n_rhs += 6
        if st != STATUS_OK:
            status = st
            break

        err_norm_sq = 0.0
        for i in range(4):
            err_i = h * (
                _DP_E1 * k1[i]
                + _DP_E3 * k3[i]
                + _DP_E4 * k4[i]
                + _DP_E5 * k5[i]
                + _DP_E6 * k6[i]
                + _DP_E7 * k7[i]
            )
            scale = atol + rtol * max(abs(y[i]), abs(y_new[i]))
            err_norm_sq += (err_i / scale) ** 2
        err_norm = np.sqrt(err_norm_sq / 4.0)

        if err_norm <= 1.0:
            # land exactly on t_end when the clamped step was accepted, so
            # roundoff cannot leave an under-floor sliver of time
            t = t_end if final_step else t + h
            y = y_new
            k1 = k7  # FSAL
            n_accept += 1
            if count == cap:
                cap *= 2
                ts_new = np.empty(cap)
                qs_new = np.empty((cap, 4))
                hs_new = np.empty(cap)
                ts_new[:count] = ts
                qs_new[:count] = qs
                hs_new[:count] = hs
                ts = ts_new
                qs = qs_new
                hs = hs_new
            ts[count] = t
            qs[count] = y
            hs[count] = h
            count += 1
        else:
            n_reject += 1

        if err_norm == 0.0:
            factor = 5.0
        else:
            factor = min(5.0, max(0.2, 0.9 * err_norm ** -0.2))
        h = h * factor

    return ts[:count], qs[:count], hs[:count], n_accept, n_reject, n_rhs, status
