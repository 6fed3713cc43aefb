"""Pure-Python numerical kernels.

Fallback twin of the compiled ``_kernels`` extension: same function names,
same algorithms, same constants. Scalar entry points use ``math``; array
entry points use vectorized numpy where the loop structure allows it.
Argument validation lives in the public modules, not here.
"""

import math

import numpy as np

from .errors import NumericsError

PI = math.pi

# kappa below this uses the degenerate (sine-Gordon) closed form
KAPPA_SG = 1e-8
# rescaled half-width beyond which the degenerate branch returns exact vacua
SG_XI_CLAMP = 700.0
# bracket inset and bisection tolerance, as fractions of the v-range width
V_EDGE_FRAC = 1e-14
V_TOL_FRAC = 1e-14
V_MAX_ITER = 200

SIMPSON_MAX_DEPTH = 60

# Cash-Karp 5(4) pair
_CK_A21 = 1.0 / 5.0
_CK_A31, _CK_A32 = 3.0 / 40.0, 9.0 / 40.0
_CK_A41, _CK_A42, _CK_A43 = 3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0
_CK_A51, _CK_A52, _CK_A53, _CK_A54 = -11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0
_CK_A61, _CK_A62, _CK_A63, _CK_A64, _CK_A65 = (
    1631.0 / 55296.0,
    175.0 / 512.0,
    575.0 / 13824.0,
    44275.0 / 110592.0,
    253.0 / 4096.0,
)
_CK_B1, _CK_B3, _CK_B4, _CK_B6 = 37.0 / 378.0, 250.0 / 621.0, 125.0 / 594.0, 512.0 / 1771.0
_CK_E1, _CK_E3, _CK_E4, _CK_E5, _CK_E6 = (
    -277.0 / 64512.0,
    6925.0 / 370944.0,
    -6925.0 / 202752.0,
    -277.0 / 14336.0,
    277.0 / 7084.0,
)


# ---------------------------------------------------------------------------
# pointwise model formulas
# ---------------------------------------------------------------------------

def energy_density(alpha, dalpha, lam, big_l):
    sa = math.sin(alpha)
    l2 = big_l * big_l
    return 0.5 * (dalpha * dalpha + sa * sa / l2 + (lam / l2) * dalpha * dalpha * sa * sa)


def charge_density(alpha, dalpha, lam, big_l):
    sa = math.sin(alpha)
    kappa = lam / (big_l * big_l)
    return (1.0 / big_l) * sa * math.sqrt(1.0 + kappa * sa * sa) * dalpha


def bps_residual(alpha, dalpha, branch, lam, big_l):
    sa = math.sin(alpha)
    return dalpha + branch * sa / math.sqrt(big_l * big_l + lam * sa * sa)


def second_order_residual(alpha, dalpha, ddalpha, lam, big_l):
    sa = math.sin(alpha)
    s2a = math.sin(2.0 * alpha)
    denom = 2.0 * (big_l * big_l + lam * sa * sa)
    return ddalpha - s2a * (1.0 - lam * dalpha * dalpha) / denom


def p_plus_minus(alpha, dalpha, lam, big_l):
    sa = math.sin(alpha)
    root = math.sqrt(big_l * big_l + lam * sa * sa)
    return root * dalpha + sa, root * dalpha - sa


def energy_density_arr(alpha, dalpha, lam, big_l):
    sa = np.sin(alpha)
    l2 = big_l * big_l
    return 0.5 * (dalpha * dalpha + sa * sa / l2 + (lam / l2) * dalpha * dalpha * sa * sa)


def charge_density_arr(alpha, dalpha, lam, big_l):
    sa = np.sin(alpha)
    kappa = lam / (big_l * big_l)
    return (1.0 / big_l) * sa * np.sqrt(1.0 + kappa * sa * sa) * dalpha


def bps_residual_arr(alpha, dalpha, branch, lam, big_l):
    sa = np.sin(alpha)
    return dalpha + branch * sa / np.sqrt(big_l * big_l + lam * sa * sa)


def second_order_residual_arr(alpha, dalpha, ddalpha, lam, big_l):
    sa = np.sin(alpha)
    s2a = np.sin(2.0 * alpha)
    denom = 2.0 * (big_l * big_l + lam * sa * sa)
    return ddalpha - s2a * (1.0 - lam * dalpha * dalpha) / denom


def p_plus_minus_arr(alpha, dalpha, lam, big_l):
    sa = np.sin(alpha)
    root = np.sqrt(big_l * big_l + lam * sa * sa)
    return root * dalpha + sa, root * dalpha - sa


# ---------------------------------------------------------------------------
# closed-form transform, canonical branch (rescaled coordinate xi = (x-x0)/L)
# ---------------------------------------------------------------------------

def v_range(kappa):
    rt = math.sqrt(1.0 + kappa)
    return 1.0 - rt, rt - 1.0


def u_of_v(v, kappa):
    return -2.0 * v * math.sqrt(1.0 + kappa) / (v * v + kappa)


def v_of_alpha(alpha, kappa):
    # rationalized form; removable singularity at alpha = pi/2 is exact
    sa = math.sin(alpha)
    ca = math.cos(alpha)
    return -kappa * ca / (math.sqrt(1.0 + kappa * sa * sa) + math.sqrt(1.0 + kappa))


def _log_ratio(v, kappa):
    # ln|(v^2+2v-kappa)/(v^2-2v-kappa)| via the factored roots, stable at
    # both edges of the v-range
    rt = math.sqrt(1.0 + kappa)
    return (
        math.log(rt - 1.0 - v)
        + math.log(v + 1.0 + rt)
        - math.log(v - 1.0 + rt)
        - math.log(1.0 + rt - v)
    )


def antiderivative_v(v, kappa):
    sk = math.sqrt(kappa)
    return 0.5 * _log_ratio(v, kappa) - 2.0 * sk * math.atan(v / sk)


def xi_of_v(v, kappa):
    return -antiderivative_v(v, kappa)


def xi_of_v_arr(v, kappa):
    rt = math.sqrt(1.0 + kappa)
    sk = math.sqrt(kappa)
    log_ratio = (
        np.log(rt - 1.0 - v)
        + np.log(v + 1.0 + rt)
        - np.log(v - 1.0 + rt)
        - np.log(1.0 + rt - v)
    )
    return 2.0 * sk * np.arctan(v / sk) - 0.5 * log_ratio


def xi_clamp(kappa):
    """Rescaled distance from center beyond which exact vacua are returned."""
    if kappa < KAPPA_SG:
        return SG_XI_CLAMP
    v_min, v_max = v_range(kappa)
    return xi_of_v(v_max - V_EDGE_FRAC * (v_max - v_min), kappa)


def v_of_xi(xi, kappa):
    v_min, v_max = v_range(kappa)
    width = v_max - v_min
    eps = V_EDGE_FRAC * width
    lo = v_min + eps
    hi = v_max - eps
    if xi <= xi_of_v(lo, kappa):
        return lo
    if xi >= xi_of_v(hi, kappa):
        return hi
    tol = V_TOL_FRAC * width
    it = 0
    while hi - lo > tol and it < V_MAX_ITER:
        mid = 0.5 * (lo + hi)
        if xi_of_v(mid, kappa) < xi:
            lo = mid
        else:
            hi = mid
        it += 1
    return 0.5 * (lo + hi)


def alpha_hat_of_xi(xi, kappa):
    """Canonical increasing kink profile in [0, pi], centered at xi = 0."""
    if xi == 0.0:
        return 0.5 * PI
    if kappa < KAPPA_SG:
        if xi >= SG_XI_CLAMP:
            return PI
        if xi <= -SG_XI_CLAMP:
            return 0.0
        return 2.0 * math.atan(math.exp(xi))
    xic = xi_clamp(kappa)
    if xi >= xic:
        return PI
    if xi <= -xic:
        return 0.0
    u = u_of_v(v_of_xi(xi, kappa), kappa)
    if u > 1.0:
        u = 1.0
    elif u < -1.0:
        u = -1.0
    return math.acos(u)


def alpha_hat_arr(xi, kappa):
    xi = np.ascontiguousarray(xi, dtype=np.float64)
    out = np.empty_like(xi)
    if kappa < KAPPA_SG:
        hi = xi >= SG_XI_CLAMP
        lo = xi <= -SG_XI_CLAMP
        mid = ~(hi | lo)
        out[hi] = PI
        out[lo] = 0.0
        out[mid] = 2.0 * np.arctan(np.exp(xi[mid]))
        out[xi == 0.0] = 0.5 * PI
        return out
    v_min, v_max = v_range(kappa)
    width = v_max - v_min
    eps = V_EDGE_FRAC * width
    xic = xi_of_v(v_max - eps, kappa)
    hi = xi >= xic
    lo = xi <= -xic
    mid = ~(hi | lo)
    out[hi] = PI
    out[lo] = 0.0
    target = xi[mid]
    vlo = np.full(target.shape, v_min + eps)
    vhi = np.full(target.shape, v_max - eps)
    tol = V_TOL_FRAC * width
    span = width - 2.0 * eps
    it = 0
    while span > tol and it < V_MAX_ITER:
        vmid = 0.5 * (vlo + vhi)
        below = xi_of_v_arr(vmid, kappa) < target
        vlo = np.where(below, vmid, vlo)
        vhi = np.where(below, vhi, vmid)
        span *= 0.5
        it += 1
    v = 0.5 * (vlo + vhi)
    u = np.clip(-2.0 * v * math.sqrt(1.0 + kappa) / (v * v + kappa), -1.0, 1.0)
    out[mid] = np.arccos(u)
    out[xi == 0.0] = 0.5 * PI
    return out


# ---------------------------------------------------------------------------
# adaptive Cash-Karp integration of the first-order kink equation
# ---------------------------------------------------------------------------

def _bps_rhs(alpha, lam, big_l):
    sa = math.sin(alpha)
    return sa / math.sqrt(big_l * big_l + lam * sa * sa)


def _step_factor(ratio):
    if ratio == 0.0:
        return 5.0
    fac = 0.9 * ratio ** -0.2
    if fac > 5.0:
        return 5.0
    if fac < 0.2:
        return 0.2
    return fac


def _advance_bps(x, y, target, direction, lam, big_l, rel_tol, abs_tol, h, steps, max_steps):
    """Advance the scalar kink ODE from (x, y) to x = target. Returns (y, h, steps)."""
    h_min = 1e-300
    while direction * (target - x) > 0.0:
        if steps >= max_steps:
            raise NumericsError(
                f"step budget exhausted integrating first-order kink equation at x={x!r}"
            )
        clipped = direction * (x + h) >= direction * target
        hs = target - x if clipped else h
        k1 = _bps_rhs(y, lam, big_l)
        k2 = _bps_rhs(y + hs * _CK_A21 * k1, lam, big_l)
        k3 = _bps_rhs(y + hs * (_CK_A31 * k1 + _CK_A32 * k2), lam, big_l)
        k4 = _bps_rhs(y + hs * (_CK_A41 * k1 + _CK_A42 * k2 + _CK_A43 * k3), lam, big_l)
        k5 = _bps_rhs(
            y + hs * (_CK_A51 * k1 + _CK_A52 * k2 + _CK_A53 * k3 + _CK_A54 * k4),
            lam,
            big_l,
        )
        k6 = _bps_rhs(
            y
            + hs
            * (_CK_A61 * k1 + _CK_A62 * k2 + _CK_A63 * k3 + _CK_A64 * k4 + _CK_A65 * k5),
            lam,
            big_l,
        )
        y_new = y + hs * (_CK_B1 * k1 + _CK_B3 * k3 + _CK_B4 * k4 + _CK_B6 * k6)
        err = abs(
            hs * (_CK_E1 * k1 + _CK_E3 * k3 + _CK_E4 * k4 + _CK_E5 * k5 + _CK_E6 * k6)
        )
        scale = abs_tol + rel_tol * max(abs(y), abs(y_new))
        ratio = err / scale
        steps += 1
        if ratio <= 1.0:
            x = target if clipped else x + hs
            y = y_new
            if not clipped:
                h = hs * _step_factor(ratio)
        else:
            h = hs * _step_factor(ratio)
        if abs(h) < h_min:
            raise NumericsError("step size underflow in first-order kink integration")
    return y, h, steps


def integrate_bps_canonical(x_rel, lam, big_l, rel_tol, abs_tol, max_steps):
    """Canonical increasing kink on sorted offsets x_rel (alpha = pi/2 at 0)."""
    x_rel = np.ascontiguousarray(x_rel, dtype=np.float64)
    out = np.empty_like(x_rel)
    split = int(np.searchsorted(x_rel, 0.0, side="left"))
    steps = 0
    # rightward
    x, y, h = 0.0, 0.5 * PI, 0.1 * big_l
    for i in range(split, x_rel.shape[0]):
        y, h, steps = _advance_bps(
            x, y, x_rel[i], 1.0, lam, big_l, rel_tol, abs_tol, h, steps, max_steps
        )
        x = x_rel[i]
        out[i] = y
        if y >= PI:
            y = PI
    # leftward
    x, y, h = 0.0, 0.5 * PI, -0.1 * big_l
    for i in range(split - 1, -1, -1):
        y, h, steps = _advance_bps(
            x, y, x_rel[i], -1.0, lam, big_l, rel_tol, abs_tol, h, steps, max_steps
        )
        x = x_rel[i]
        out[i] = y
        if y <= 0.0:
            y = 0.0
    return out


# ---------------------------------------------------------------------------
# second-order field equation: adaptive integration and separatrix shooting
# ---------------------------------------------------------------------------

def _accel(alpha, dalpha, lam, big_l):
    sa = math.sin(alpha)
    ca = math.cos(alpha)
    return sa * ca * (1.0 - lam * dalpha * dalpha) / (big_l * big_l + lam * sa * sa)


def _step_second_order(a, da, hs, lam, big_l):
    """One Cash-Karp attempt on the (alpha, dalpha) system; returns state and error."""
    k1a = da
    k1b = _accel(a, da, lam, big_l)

    a2 = a + hs * _CK_A21 * k1a
    b2 = da + hs * _CK_A21 * k1b
    k2a = b2
    k2b = _accel(a2, b2, lam, big_l)

    a3 = a + hs * (_CK_A31 * k1a + _CK_A32 * k2a)
    b3 = da + hs * (_CK_A31 * k1b + _CK_A32 * k2b)
    k3a = b3
    k3b = _accel(a3, b3, lam, big_l)

    a4 = a + hs * (_CK_A41 * k1a + _CK_A42 * k2a + _CK_A43 * k3a)
    b4 = da + hs * (_CK_A41 * k1b + _CK_A42 * k2b + _CK_A43 * k3b)
    k4a = b4
    k4b = _accel(a4, b4, lam, big_l)

    a5 = a + hs * (_CK_A51 * k1a + _CK_A52 * k2a + _CK_A53 * k3a + _CK_A54 * k4a)
    b5 = da + hs * (_CK_A51 * k1b + _CK_A52 * k2b + _CK_A53 * k3b + _CK_A54 * k4b)
    k5a = b5
    k5b = _accel(a5, b5, lam, big_l)

    a6 = a + hs * (
        _CK_A61 * k1a + _CK_A62 * k2a + _CK_A63 * k3a + _CK_A64 * k4a + _CK_A65 * k5a
    )
    b6 = da + hs * (
        _CK_A61 * k1b + _CK_A62 * k2b + _CK_A63 * k3b + _CK_A64 * k4b + _CK_A65 * k5b
    )
    k6a = b6
    k6b = _accel(a6, b6, lam, big_l)

    a_new = a + hs * (_CK_B1 * k1a + _CK_B3 * k3a + _CK_B4 * k4a + _CK_B6 * k6a)
    da_new = da + hs * (_CK_B1 * k1b + _CK_B3 * k3b + _CK_B4 * k4b + _CK_B6 * k6b)
    err_a = hs * (_CK_E1 * k1a + _CK_E3 * k3a + _CK_E4 * k4a + _CK_E5 * k5a + _CK_E6 * k6a)
    err_b = hs * (_CK_E1 * k1b + _CK_E3 * k3b + _CK_E4 * k4b + _CK_E5 * k5b + _CK_E6 * k6b)
    return a_new, da_new, abs(err_a), abs(err_b)


def _advance_second_order(
    x, a, da, target, direction, lam, big_l, rel_tol, abs_tol, h, steps, max_steps
):
    h_min = 1e-300
    while direction * (target - x) > 0.0:
        if steps >= max_steps:
            raise NumericsError(
                f"step budget exhausted integrating field equation at x={x!r}"
            )
        clipped = direction * (x + h) >= direction * target
        hs = target - x if clipped else h
        a_new, da_new, err_a, err_b = _step_second_order(a, da, hs, lam, big_l)
        scale_a = abs_tol + rel_tol * max(abs(a), abs(a_new))
        scale_b = abs_tol + rel_tol * max(abs(da), abs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x = target if clipped else x + hs
            a, da = a_new, da_new
            if not clipped:
                h = hs * _step_factor(ratio)
        else:
            h = hs * _step_factor(ratio)
        if abs(h) < h_min:
            raise NumericsError("step size underflow in field-equation integration")
    return a, da, h, steps


_UNDER, _OVER = 0, 1


def _classify_slope(slope, tail_cut, x_cap, lam, big_l, rel_tol, abs_tol, max_steps):
    """Does the trajectory from (tail_cut, slope) overshoot past pi or turn back?"""
    x, a, da = 0.0, tail_cut, slope
    h = 0.1 * big_l
    steps = 0
    while True:
        if da <= 0.0:
            return _UNDER
        if a >= PI:
            return _OVER
        if x >= x_cap:
            return _UNDER
        if steps >= max_steps:
            raise NumericsError("step budget exhausted while classifying shot")
        a_new, da_new, err_a, err_b = _step_second_order(a, da, h, lam, big_l)
        scale_a = abs_tol + rel_tol * max(abs(a), abs(a_new))
        scale_b = abs_tol + rel_tol * max(abs(da), abs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x += h
            a, da = a_new, da_new
        h *= _step_factor(ratio)
        if abs(h) < 1e-300:
            raise NumericsError("step size underflow while classifying shot")


def shoot_separatrix(lam, big_l, tail_cut, rel_tol, abs_tol, max_steps):
    """Bisect the launch slope at alpha = tail_cut onto the connecting orbit.

    Returns (slope, x_center, dalpha_center) where alpha(x_center) = pi/2
    along the converged trajectory launched from x = 0.
    """
    kappa = lam / (big_l * big_l)
    transit = big_l * (2.0 * math.log(PI / tail_cut) + PI * math.sqrt(1.0 + kappa))
    x_cap = 2.0 * transit + 50.0 * big_l
    lo = 0.0
    hi = 2.0 / big_l
    if _classify_slope(hi, tail_cut, x_cap, lam, big_l, rel_tol, abs_tol, max_steps) != _OVER:
        raise NumericsError("shooting bracket not found: upper slope does not overshoot")
    slope_floor = 1e-16 * hi
    it = 0
    while hi - lo > slope_floor and it < 200:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _classify_slope(mid, tail_cut, x_cap, lam, big_l, rel_tol, abs_tol, max_steps) == _OVER:
            hi = mid
        else:
            lo = mid
        it += 1
    slope = 0.5 * (lo + hi)

    # walk the converged trajectory to the pi/2 crossing
    x, a, da = 0.0, tail_cut, slope
    h = 0.1 * big_l
    steps = 0
    while a < 0.5 * PI:
        if x >= x_cap or steps >= max_steps:
            raise NumericsError("no center crossing found on converged trajectory")
        x_prev, a_prev, da_prev = x, a, da
        a_new, da_new, err_a, err_b = _step_second_order(a, da, h, lam, big_l)
        scale_a = abs_tol + rel_tol * max(abs(a), abs(a_new))
        scale_b = abs_tol + rel_tol * max(abs(da), abs(da_new))
        ratio = max(err_a / scale_a, err_b / scale_b)
        steps += 1
        if ratio <= 1.0:
            x += h
            a, da = a_new, da_new
        h *= _step_factor(ratio)
    # bisect within the bracketing step, re-integrating from the saved state
    x_lo, a_lo, da_lo = x_prev, a_prev, da_prev
    x_hi = x
    for _ in range(200):
        x_mid = 0.5 * (x_lo + x_hi)
        if x_mid <= x_lo or x_mid >= x_hi:
            break
        a_m, da_m, _, steps = _advance_second_order(
            x_lo, a_lo, da_lo, x_mid, 1.0, lam, big_l, rel_tol, abs_tol,
            0.5 * (x_hi - x_lo), steps, max_steps,
        )
        if a_m < 0.5 * PI:
            x_lo, a_lo, da_lo = x_mid, a_m, da_m
        else:
            x_hi = x_mid
    _, da_fin, _, _ = _advance_second_order(
        x_lo, a_lo, da_lo, x_hi, 1.0, lam, big_l, rel_tol, abs_tol,
        x_hi - x_lo, steps, max_steps,
    )
    return slope, x_hi, da_fin


def integrate_second_order(x_rel, alpha0, dalpha0, lam, big_l, rel_tol, abs_tol, max_steps):
    """Integrate the field equation from anchor (0, alpha0, dalpha0) over x_rel."""
    x_rel = np.ascontiguousarray(x_rel, dtype=np.float64)
    alpha_out = np.empty_like(x_rel)
    dalpha_out = np.empty_like(x_rel)
    split = int(np.searchsorted(x_rel, 0.0, side="left"))
    steps = 0
    x, a, da, h = 0.0, alpha0, dalpha0, 0.1 * big_l
    for i in range(split, x_rel.shape[0]):
        a, da, h, steps = _advance_second_order(
            x, a, da, x_rel[i], 1.0, lam, big_l, rel_tol, abs_tol, h, steps, max_steps
        )
        x = x_rel[i]
        alpha_out[i] = a
        dalpha_out[i] = da
    x, a, da, h = 0.0, alpha0, dalpha0, -0.1 * big_l
    for i in range(split - 1, -1, -1):
        a, da, h, steps = _advance_second_order(
            x, a, da, x_rel[i], -1.0, lam, big_l, rel_tol, abs_tol, h, steps, max_steps
        )
        x = x_rel[i]
        alpha_out[i] = a
        dalpha_out[i] = da
    return alpha_out, dalpha_out


# ---------------------------------------------------------------------------
# fused adaptive Simpson quadrature over the exact kink profile
# ---------------------------------------------------------------------------

WHICH_ENERGY, WHICH_CHARGE = 0, 1


def _profile_density(which, x, lam, big_l, x0, refl, parity, kappa):
    xi = refl * (x - x0) / big_l
    ah = alpha_hat_of_xi(xi, kappa)
    sa = math.sin(ah)
    root = math.sqrt(big_l * big_l + lam * sa * sa)
    da = sa / root
    if which == WHICH_ENERGY:
        l2 = big_l * big_l
        return 0.5 * (da * da + sa * sa / l2 + (lam / l2) * da * da * sa * sa)
    return (refl * parity / big_l) * sa * math.sqrt(1.0 + kappa * sa * sa) * da


def _simpson_recurse(which, lam, big_l, x0, refl, parity, kappa,
                     a, fa, b, fb, m, fm, whole, eps, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = _profile_density(which, lm, lam, big_l, x0, refl, parity, kappa)
    frm = _profile_density(which, rm, lam, big_l, x0, refl, parity, kappa)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise NumericsError("adaptive quadrature failed to converge on kink profile")
    return _simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1,
    ) + _simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1,
    )


def profile_quadrature(which, lam, big_l, x0, refl, parity, a, b, rel_tol, abs_tol):
    """Adaptive Simpson integral of a density along the exact kink profile."""
    kappa = lam / (big_l * big_l)
    fa = _profile_density(which, a, lam, big_l, x0, refl, parity, kappa)
    fb = _profile_density(which, b, lam, big_l, x0, refl, parity, kappa)
    m = 0.5 * (a + b)
    fm = _profile_density(which, m, lam, big_l, x0, refl, parity, kappa)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps = max(abs_tol, rel_tol * abs(whole))
    return _simpson_recurse(
        which, lam, big_l, x0, refl, parity, kappa,
        a, fa, b, fb, m, fm, whole, eps, SIMPSON_MAX_DEPTH,
    )
