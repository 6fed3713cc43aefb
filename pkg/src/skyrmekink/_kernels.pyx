# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled numerical kernels.

Twin of ``_kernels_py``: same names, same algorithms, same constants. The
pure-Python module is the reference; keep the two in lockstep.
"""

from libc.math cimport acos, atan, cos, exp, fabs, log, sin, sqrt

import numpy as np

from .errors import NumericsError

PI = 3.141592653589793
KAPPA_SG = 1e-8
SG_XI_CLAMP = 700.0
V_EDGE_FRAC = 1e-14
V_TOL_FRAC = 1e-14
V_MAX_ITER = 200
SIMPSON_MAX_DEPTH = 60
WHICH_ENERGY = 0
WHICH_CHARGE = 1

cdef double C_PI = 3.141592653589793
cdef double C_KAPPA_SG = 1e-8
cdef double C_SG_XI_CLAMP = 700.0
cdef double C_V_EDGE_FRAC = 1e-14
cdef double C_V_TOL_FRAC = 1e-14
cdef int C_V_MAX_ITER = 200
cdef int C_SIMPSON_MAX_DEPTH = 60

# Cash-Karp 5(4) pair
cdef double A21 = 1.0 / 5.0
cdef double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0
cdef double A41 = 3.0 / 10.0, A42 = -9.0 / 10.0, A43 = 6.0 / 5.0
cdef double A51 = -11.0 / 54.0, A52 = 5.0 / 2.0, A53 = -70.0 / 27.0, A54 = 35.0 / 27.0
cdef double A61 = 1631.0 / 55296.0, A62 = 175.0 / 512.0, A63 = 575.0 / 13824.0
cdef double A64 = 44275.0 / 110592.0, A65 = 253.0 / 4096.0
cdef double B1 = 37.0 / 378.0, B3 = 250.0 / 621.0, B4 = 125.0 / 594.0, B6 = 512.0 / 1771.0
cdef double E1 = -277.0 / 64512.0, E3 = 6925.0 / 370944.0, E4 = -6925.0 / 202752.0
cdef double E5 = -277.0 / 14336.0, E6 = 277.0 / 7084.0


# ---------------------------------------------------------------------------
# pointwise model formulas
# ---------------------------------------------------------------------------

cdef inline double c_energy_density(double alpha, double dalpha, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    cdef double l2 = big_l * big_l
    return 0.5 * (dalpha * dalpha + sa * sa / l2 + (lam / l2) * dalpha * dalpha * sa * sa)


cdef inline double c_charge_density(double alpha, double dalpha, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    cdef double kappa = lam / (big_l * big_l)
    return (1.0 / big_l) * sa * sqrt(1.0 + kappa * sa * sa) * dalpha


cdef inline double c_bps_residual(double alpha, double dalpha, double branch, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    return dalpha + branch * sa / sqrt(big_l * big_l + lam * sa * sa)


cdef inline double c_second_order_residual(double alpha, double dalpha, double ddalpha, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    cdef double s2a = sin(2.0 * alpha)
    cdef double denom = 2.0 * (big_l * big_l + lam * sa * sa)
    return ddalpha - s2a * (1.0 - lam * dalpha * dalpha) / denom


def energy_density(double alpha, double dalpha, double lam, double big_l):
    return c_energy_density(alpha, dalpha, lam, big_l)


def charge_density(double alpha, double dalpha, double lam, double big_l):
    return c_charge_density(alpha, dalpha, lam, big_l)


def bps_residual(double alpha, double dalpha, double branch, double lam, double big_l):
    return c_bps_residual(alpha, dalpha, branch, lam, big_l)


def second_order_residual(double alpha, double dalpha, double ddalpha, double lam, double big_l):
    return c_second_order_residual(alpha, dalpha, ddalpha, lam, big_l)


def p_plus_minus(double alpha, double dalpha, double lam, double big_l):
    cdef double sa = sin(alpha)
    cdef double root = sqrt(big_l * big_l + lam * sa * sa)
    return root * dalpha + sa, root * dalpha - sa


def energy_density_arr(alpha, dalpha, double lam, double big_l):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] da = np.ascontiguousarray(dalpha, dtype=np.float64)
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        o[i] = c_energy_density(a[i], da[i], lam, big_l)
    return out


def charge_density_arr(alpha, dalpha, double lam, double big_l):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] da = np.ascontiguousarray(dalpha, dtype=np.float64)
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        o[i] = c_charge_density(a[i], da[i], lam, big_l)
    return out


def bps_residual_arr(alpha, dalpha, double branch, double lam, double big_l):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] da = np.ascontiguousarray(dalpha, dtype=np.float64)
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        o[i] = c_bps_residual(a[i], da[i], branch, lam, big_l)
    return out


def second_order_residual_arr(alpha, dalpha, ddalpha, double lam, double big_l):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] da = np.ascontiguousarray(dalpha, dtype=np.float64)
    cdef double[::1] dda = np.ascontiguousarray(ddalpha, dtype=np.float64)
    out = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        o[i] = c_second_order_residual(a[i], da[i], dda[i], lam, big_l)
    return out


def p_plus_minus_arr(alpha, dalpha, double lam, double big_l):
    cdef double[::1] a = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef double[::1] da = np.ascontiguousarray(dalpha, dtype=np.float64)
    plus = np.empty(a.shape[0], dtype=np.float64)
    minus = np.empty(a.shape[0], dtype=np.float64)
    cdef double[::1] op = plus
    cdef double[::1] om = minus
    cdef Py_ssize_t i
    cdef double sa, root
    for i in range(a.shape[0]):
        sa = sin(a[i])
        root = sqrt(big_l * big_l + lam * sa * sa)
        op[i] = root * da[i] + sa
        om[i] = root * da[i] - sa
    return plus, minus


# ---------------------------------------------------------------------------
# closed-form transform, canonical branch
# ---------------------------------------------------------------------------

def v_range(double kappa):
    cdef double rt = sqrt(1.0 + kappa)
    return 1.0 - rt, rt - 1.0


cdef inline double c_u_of_v(double v, double kappa) noexcept:
    return -2.0 * v * sqrt(1.0 + kappa) / (v * v + kappa)


def u_of_v(double v, double kappa):
    return c_u_of_v(v, kappa)


cdef inline double c_v_of_alpha(double alpha, double kappa) noexcept:
    cdef double sa = sin(alpha)
    cdef double ca = cos(alpha)
    return -kappa * ca / (sqrt(1.0 + kappa * sa * sa) + sqrt(1.0 + kappa))


def v_of_alpha(double alpha, double kappa):
    return c_v_of_alpha(alpha, kappa)


cdef inline double c_log_ratio(double v, double kappa) noexcept:
    cdef double rt = sqrt(1.0 + kappa)
    return (
        log(rt - 1.0 - v)
        + log(v + 1.0 + rt)
        - log(v - 1.0 + rt)
        - log(1.0 + rt - v)
    )


cdef inline double c_antiderivative_v(double v, double kappa) noexcept:
    cdef double sk = sqrt(kappa)
    return 0.5 * c_log_ratio(v, kappa) - 2.0 * sk * atan(v / sk)


def antiderivative_v(double v, double kappa):
    return c_antiderivative_v(v, kappa)


cdef inline double c_xi_of_v(double v, double kappa) noexcept:
    return -c_antiderivative_v(v, kappa)


def xi_of_v(double v, double kappa):
    return c_xi_of_v(v, kappa)


def xi_of_v_arr(v, double kappa):
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    out = np.empty(vv.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(vv.shape[0]):
        o[i] = c_xi_of_v(vv[i], kappa)
    return out


cdef double c_xi_clamp(double kappa) noexcept:
    cdef double v_min, v_max, rt
    if kappa < C_KAPPA_SG:
        return C_SG_XI_CLAMP
    rt = sqrt(1.0 + kappa)
    v_min = 1.0 - rt
    v_max = rt - 1.0
    return c_xi_of_v(v_max - C_V_EDGE_FRAC * (v_max - v_min), kappa)


def xi_clamp(double kappa):
    return c_xi_clamp(kappa)


cdef double c_v_of_xi(double xi, double kappa) noexcept:
    cdef double rt = sqrt(1.0 + kappa)
    cdef double v_min = 1.0 - rt
    cdef double v_max = rt - 1.0
    cdef double width = v_max - v_min
    cdef double eps = C_V_EDGE_FRAC * width
    cdef double lo = v_min + eps
    cdef double hi = v_max - eps
    cdef double tol, mid
    cdef int it
    if xi <= c_xi_of_v(lo, kappa):
        return lo
    if xi >= c_xi_of_v(hi, kappa):
        return hi
    tol = C_V_TOL_FRAC * width
    it = 0
    while hi - lo > tol and it < C_V_MAX_ITER:
        mid = 0.5 * (lo + hi)
        if c_xi_of_v(mid, kappa) < xi:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi)


def v_of_xi(double xi, double kappa):
    return c_v_of_xi(xi, kappa)


cdef double c_alpha_hat_of_xi(double xi, double kappa) noexcept:
    cdef double xic, u
    if xi == 0.0:
        return 0.5 * C_PI
    if kappa < C_KAPPA_SG:
        if xi >= C_SG_XI_CLAMP:
            return C_PI
        if xi <= -C_SG_XI_CLAMP:
            return 0.0
        return 2.0 * atan(exp(xi))
    xic = c_xi_clamp(kappa)
    if xi >= xic:
        return C_PI
    if xi <= -xic:
        return 0.0
    u = c_u_of_v(c_v_of_xi(xi, kappa), kappa)
    if u > 1.0:
        u = 1.0
    elif u < -1.0:
        u = -1.0
    return acos(u)


def alpha_hat_of_xi(double xi, double kappa):
    return c_alpha_hat_of_xi(xi, kappa)


def alpha_hat_arr(xi, double kappa):
    cdef double[::1] x = np.ascontiguousarray(xi, dtype=np.float64)
    out = np.empty(x.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        o[i] = c_alpha_hat_of_xi(x[i], kappa)
    return out


# ---------------------------------------------------------------------------
# adaptive Cash-Karp integration of the first-order kink equation
# ---------------------------------------------------------------------------

cdef inline double c_bps_rhs(double alpha, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    return sa / sqrt(big_l * big_l + lam * sa * sa)


cdef inline double c_step_factor(double ratio) noexcept:
    cdef double fac
    if ratio == 0.0:
        return 5.0
    fac = 0.9 * ratio ** -0.2
    if fac > 5.0:
        return 5.0
    if fac < 0.2:
        return 0.2
    return fac


# status codes for the C advance routines
cdef int ADV_OK = 0
cdef int ADV_BUDGET = 1
cdef int ADV_UNDERFLOW = 2


cdef int c_advance_bps(double* x_io, double* y_io, double target, double direction,
                       double lam, double big_l, double rel_tol, double abs_tol,
                       double* h_io, long* steps_io, long max_steps) noexcept:
    cdef double x = x_io[0]
    cdef double y = y_io[0]
    cdef double h = h_io[0]
    cdef long steps = steps_io[0]
    cdef double hs, k1, k2, k3, k4, k5, k6, y_new, err, scale, ratio
    cdef bint clipped
    while direction * (target - x) > 0.0:
        if steps >= max_steps:
            x_io[0] = x; y_io[0] = y; h_io[0] = h; steps_io[0] = steps
            return ADV_BUDGET
        clipped = direction * (x + h) >= direction * target
        hs = target - x if clipped else h
        k1 = c_bps_rhs(y, lam, big_l)
        k2 = c_bps_rhs(y + hs * A21 * k1, lam, big_l)
        k3 = c_bps_rhs(y + hs * (A31 * k1 + A32 * k2), lam, big_l)
        k4 = c_bps_rhs(y + hs * (A41 * k1 + A42 * k2 + A43 * k3), lam, big_l)
        k5 = c_bps_rhs(y + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4), lam, big_l)
        k6 = c_bps_rhs(
            y + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5), lam, big_l
        )
        y_new = y + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B6 * k6)
        err = fabs(hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6))
        scale = abs_tol + rel_tol * max(fabs(y), fabs(y_new))
        ratio = err / scale
        steps += 1
        if ratio <= 1.0:
            x = target if clipped else x + hs
            y = y_new
            if not clipped:
                h = hs * c_step_factor(ratio)
        else:
            h = hs * c_step_factor(ratio)
        if fabs(h) < 1e-300:
            x_io[0] = x; y_io[0] = y; h_io[0] = h; steps_io[0] = steps
            return ADV_UNDERFLOW
    x_io[0] = x; y_io[0] = y; h_io[0] = h; steps_io[0] = steps
    return ADV_OK


cdef _raise_advance(int status, double x):
    if status == ADV_BUDGET:
        raise NumericsError(
            f"step budget exhausted integrating first-order kink equation at x={x!r}"
        )
    raise NumericsError("step size underflow in first-order kink integration")


def integrate_bps_canonical(x_rel, double lam, double big_l, double rel_tol,
                            double abs_tol, long max_steps):
    xr = np.ascontiguousarray(x_rel, dtype=np.float64)
    cdef double[::1] xs = xr
    out = np.empty(xs.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t split = np.searchsorted(xr, 0.0, side="left")
    cdef Py_ssize_t i
    cdef double x, y, h
    cdef long steps = 0
    cdef int status
    x = 0.0; y = 0.5 * C_PI; h = 0.1 * big_l
    for i in range(split, xs.shape[0]):
        status = c_advance_bps(&x, &y, xs[i], 1.0, lam, big_l, rel_tol, abs_tol,
                               &h, &steps, max_steps)
        if status != ADV_OK:
            _raise_advance(status, x)
        x = xs[i]
        o[i] = y
        if y >= C_PI:
            y = C_PI
    x = 0.0; y = 0.5 * C_PI; h = -0.1 * big_l
    for i in range(split - 1, -1, -1):
        status = c_advance_bps(&x, &y, xs[i], -1.0, lam, big_l, rel_tol, abs_tol,
                               &h, &steps, max_steps)
        if status != ADV_OK:
            _raise_advance(status, x)
        x = xs[i]
        o[i] = y
        if y <= 0.0:
            y = 0.0
    return out


# ---------------------------------------------------------------------------
# second-order field equation: adaptive integration and separatrix shooting
# ---------------------------------------------------------------------------

cdef inline double c_accel(double alpha, double dalpha, double lam, double big_l) noexcept:
    cdef double sa = sin(alpha)
    cdef double ca = cos(alpha)
    return sa * ca * (1.0 - lam * dalpha * dalpha) / (big_l * big_l + lam * sa * sa)


cdef void c_step_second_order(double a, double da, double hs, double lam, double big_l,
                              double* a_new, double* da_new, double* err_a, double* err_b) noexcept:
    cdef double k1a = da
    cdef double k1b = c_accel(a, da, lam, big_l)

    cdef double a2 = a + hs * A21 * k1a
    cdef double b2 = da + hs * A21 * k1b
    cdef double k2a = b2
    cdef double k2b = c_accel(a2, b2, lam, big_l)

    cdef double a3 = a + hs * (A31 * k1a + A32 * k2a)
    cdef double b3 = da + hs * (A31 * k1b + A32 * k2b)
    cdef double k3a = b3
    cdef double k3b = c_accel(a3, b3, lam, big_l)

    cdef double a4 = a + hs * (A41 * k1a + A42 * k2a + A43 * k3a)
    cdef double b4 = da + hs * (A41 * k1b + A42 * k2b + A43 * k3b)
    cdef double k4a = b4
    cdef double k4b = c_accel(a4, b4, lam, big_l)

    cdef double a5 = a + hs * (A51 * k1a + A52 * k2a + A53 * k3a + A54 * k4a)
    cdef double b5 = da + hs * (A51 * k1b + A52 * k2b + A53 * k3b + A54 * k4b)
    cdef double k5a = b5
    cdef double k5b = c_accel(a5, b5, lam, big_l)

    cdef double a6 = a + hs * (A61 * k1a + A62 * k2a + A63 * k3a + A64 * k4a + A65 * k5a)
    cdef double b6 = da + hs * (A61 * k1b + A62 * k2b + A63 * k3b + A64 * k4b + A65 * k5b)
    cdef double k6a = b6
    cdef double k6b = c_accel(a6, b6, lam, big_l)

    a_new[0] = a + hs * (B1 * k1a + B3 * k3a + B4 * k4a + B6 * k6a)
    da_new[0] = da + hs * (B1 * k1b + B3 * k3b + B4 * k4b + B6 * k6b)
    err_a[0] = fabs(hs * (E1 * k1a + E3 * k3a + E4 * k4a + E5 * k5a + E6 * k6a))
    err_b[0] = fabs(hs * (E1 * k1b + E3 * k3b + E4 * k4b + E5 * k5b + E6 * k6b))


cdef int c_advance_second_order(double* x_io, double* a_io, double* da_io, double target,
                                double direction, double lam, double big_l,
                                double rel_tol, double abs_tol, double* h_io,
                                long* steps_io, long max_steps) noexcept:
    cdef double x = x_io[0]
    cdef double a = a_io[0]
    cdef double da = da_io[0]
    cdef double h = h_io[0]
    cdef long steps = steps_io[0]
    cdef double hs, a_new, da_new, err_a, err_b, scale_a, scale_b, ratio
    cdef bint clipped
    while direction * (target - x) > 0.0:
        if steps >= max_steps:
            x_io[0] = x; a_io[0] = a; da_io[0] = da; h_io[0] = h; steps_io[0] = steps
            return ADV_BUDGET
        clipped = direction * (x + h) >= direction * target
        hs = target - x if clipped else h
        c_step_second_order(a, da, hs, lam, big_l, &a_new, &da_new, &err_a, &err_b)
        scale_a = abs_tol + rel_tol * max(fabs(a), fabs(a_new))
        scale_b = abs_tol + rel_tol * max(fabs(da), fabs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x = target if clipped else x + hs
            a = a_new
            da = da_new
            if not clipped:
                h = hs * c_step_factor(ratio)
        else:
            h = hs * c_step_factor(ratio)
        if fabs(h) < 1e-300:
            x_io[0] = x; a_io[0] = a; da_io[0] = da; h_io[0] = h; steps_io[0] = steps
            return ADV_UNDERFLOW
    x_io[0] = x; a_io[0] = a; da_io[0] = da; h_io[0] = h; steps_io[0] = steps
    return ADV_OK


cdef _raise_advance2(int status, double x):
    if status == ADV_BUDGET:
        raise NumericsError(
            f"step budget exhausted integrating field equation at x={x!r}"
        )
    raise NumericsError("step size underflow in field-equation integration")


cdef int SHOT_UNDER = 0
cdef int SHOT_OVER = 1
cdef int SHOT_BUDGET = -1
cdef int SHOT_UNDERFLOW = -2


cdef int c_classify_slope(double slope, double tail_cut, double x_cap, double lam,
                          double big_l, double rel_tol, double abs_tol,
                          long max_steps) noexcept:
    cdef double x = 0.0
    cdef double a = tail_cut
    cdef double da = slope
    cdef double h = 0.1 * big_l
    cdef long steps = 0
    cdef double a_new, da_new, err_a, err_b, scale_a, scale_b, ratio
    while True:
        if da <= 0.0:
            return SHOT_UNDER
        if a >= C_PI:
            return SHOT_OVER
        if x >= x_cap:
            return SHOT_UNDER
        if steps >= max_steps:
            return SHOT_BUDGET
        c_step_second_order(a, da, h, lam, big_l, &a_new, &da_new, &err_a, &err_b)
        scale_a = abs_tol + rel_tol * max(fabs(a), fabs(a_new))
        scale_b = abs_tol + rel_tol * max(fabs(da), fabs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x += h
            a = a_new
            da = da_new
        h *= c_step_factor(ratio)
        if fabs(h) < 1e-300:
            return SHOT_UNDERFLOW


cdef _check_classify(int cls):
    if cls == SHOT_BUDGET:
        raise NumericsError("step budget exhausted while classifying shot")
    if cls == SHOT_UNDERFLOW:
        raise NumericsError("step size underflow while classifying shot")


def shoot_separatrix(double lam, double big_l, double tail_cut, double rel_tol,
                     double abs_tol, long max_steps):
    cdef double kappa = lam / (big_l * big_l)
    cdef double transit = big_l * (2.0 * log(C_PI / tail_cut) + C_PI * sqrt(1.0 + kappa))
    cdef double x_cap = 2.0 * transit + 50.0 * big_l
    cdef double lo = 0.0
    cdef double hi = 2.0 / big_l
    cdef double slope_floor = 1e-16 * hi
    cdef double mid, slope
    cdef int it, cls
    cls = c_classify_slope(hi, tail_cut, x_cap, lam, big_l, rel_tol, abs_tol, max_steps)
    _check_classify(cls)
    if cls != SHOT_OVER:
        raise NumericsError("shooting bracket not found: upper slope does not overshoot")
    it = 0
    while hi - lo > slope_floor and it < 200:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        cls = c_classify_slope(mid, tail_cut, x_cap, lam, big_l, rel_tol, abs_tol, max_steps)
        _check_classify(cls)
        if cls == SHOT_OVER:
            hi = mid
        else:
            lo = mid
        it += 1
    slope = 0.5 * (lo + hi)

    # walk the converged trajectory to the pi/2 crossing
    cdef double x = 0.0
    cdef double a = tail_cut
    cdef double da = slope
    cdef double h = 0.1 * big_l
    cdef long steps = 0
    cdef double x_prev = x, a_prev = a, da_prev = da
    cdef double a_new, da_new, err_a, err_b, scale_a, scale_b, ratio
    while a < 0.5 * C_PI:
        if x >= x_cap or steps >= max_steps:
            raise NumericsError("no center crossing found on converged trajectory")
        x_prev = x; a_prev = a; da_prev = da
        c_step_second_order(a, da, h, lam, big_l, &a_new, &da_new, &err_a, &err_b)
        scale_a = abs_tol + rel_tol * max(fabs(a), fabs(a_new))
        scale_b = abs_tol + rel_tol * max(fabs(da), fabs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x += h
            a = a_new
            da = da_new
        h *= c_step_factor(ratio)

    cdef double x_lo = x_prev, a_lo = a_prev, da_lo = da_prev
    cdef double x_hi = x
    cdef double x_mid, a_m, da_m, h_loc
    cdef int status
    cdef int k
    for k in range(200):
        x_mid = 0.5 * (x_lo + x_hi)
        if x_mid <= x_lo or x_mid >= x_hi:
            break
        a_m = a_lo; da_m = da_lo
        h_loc = 0.5 * (x_hi - x_lo)
        x = x_lo
        status = c_advance_second_order(&x, &a_m, &da_m, x_mid, 1.0, lam, big_l,
                                        rel_tol, abs_tol, &h_loc, &steps, max_steps)
        if status != ADV_OK:
            _raise_advance2(status, x)
        if a_m < 0.5 * C_PI:
            x_lo = x_mid; a_lo = a_m; da_lo = da_m
        else:
            x_hi = x_mid
    cdef double a_fin = a_lo, da_fin = da_lo
    h_loc = x_hi - x_lo
    x = x_lo
    status = c_advance_second_order(&x, &a_fin, &da_fin, x_hi, 1.0, lam, big_l,
                                    rel_tol, abs_tol, &h_loc, &steps, max_steps)
    if status != ADV_OK:
        _raise_advance2(status, x)
    return slope, x_hi, da_fin


def integrate_second_order(x_rel, double alpha0, double dalpha0, double lam,
                           double big_l, double rel_tol, double abs_tol, long max_steps):
    xr = np.ascontiguousarray(x_rel, dtype=np.float64)
    cdef double[::1] xs = xr
    alpha_out = np.empty(xs.shape[0], dtype=np.float64)
    dalpha_out = np.empty(xs.shape[0], dtype=np.float64)
    cdef double[::1] oa = alpha_out
    cdef double[::1] ob = dalpha_out
    cdef Py_ssize_t split = np.searchsorted(xr, 0.0, side="left")
    cdef Py_ssize_t i
    cdef double x, a, da, h
    cdef long steps = 0
    cdef int status
    x = 0.0; a = alpha0; da = dalpha0; h = 0.1 * big_l
    for i in range(split, xs.shape[0]):
        status = c_advance_second_order(&x, &a, &da, xs[i], 1.0, lam, big_l,
                                        rel_tol, abs_tol, &h, &steps, max_steps)
        if status != ADV_OK:
            _raise_advance2(status, x)
        x = xs[i]
        oa[i] = a
        ob[i] = da
    x = 0.0; a = alpha0; da = dalpha0; h = -0.1 * big_l
    for i in range(split - 1, -1, -1):
        status = c_advance_second_order(&x, &a, &da, xs[i], -1.0, lam, big_l,
                                        rel_tol, abs_tol, &h, &steps, max_steps)
        if status != ADV_OK:
            _raise_advance2(status, x)
        x = xs[i]
        oa[i] = a
        ob[i] = da
    return alpha_out, dalpha_out


# ---------------------------------------------------------------------------
# fused adaptive Simpson quadrature over the exact kink profile
# ---------------------------------------------------------------------------

cdef double c_profile_density(int which, double x, double lam, double big_l,
                              double x0, double refl, double parity, double kappa) noexcept:
    cdef double xi = refl * (x - x0) / big_l
    cdef double ah = c_alpha_hat_of_xi(xi, kappa)
    cdef double sa = sin(ah)
    cdef double root = sqrt(big_l * big_l + lam * sa * sa)
    cdef double da = sa / root
    cdef double l2
    if which == 0:
        l2 = big_l * big_l
        return 0.5 * (da * da + sa * sa / l2 + (lam / l2) * da * da * sa * sa)
    return (refl * parity / big_l) * sa * sqrt(1.0 + kappa * sa * sa) * da


cdef double c_simpson_recurse(int which, double lam, double big_l, double x0,
                              double refl, double parity, double kappa,
                              double a, double fa, double b, double fb,
                              double m, double fm, double whole, double eps,
                              int depth) except? -1e308:
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = c_profile_density(which, lm, lam, big_l, x0, refl, parity, kappa)
    cdef double frm = c_profile_density(which, rm, lam, big_l, x0, refl, parity, kappa)
    cdef double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double delta = left + right - whole
    if fabs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise NumericsError("adaptive quadrature failed to converge on kink profile")
    return c_simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1,
    ) + c_simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1,
    )


def profile_quadrature(int which, double lam, double big_l, double x0, double refl,
                       double parity, double a, double b, double rel_tol, double abs_tol):
    cdef double kappa = lam / (big_l * big_l)
    cdef double fa = c_profile_density(which, a, lam, big_l, x0, refl, parity, kappa)
    cdef double fb = c_profile_density(which, b, lam, big_l, x0, refl, parity, kappa)
    cdef double m = 0.5 * (a + b)
    cdef double fm = c_profile_density(which, m, lam, big_l, x0, refl, parity, kappa)
    cdef double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    cdef double eps = max(abs_tol, rel_tol * fabs(whole))
    return c_simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        a, fa, b, fb, m, fm, whole, eps, C_SIMPSON_MAX_DEPTH,
    )
