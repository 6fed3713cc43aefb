"""Energy, charge, saturation, and equivalence reporting."""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import SkyrmeKinkError
from .model import ModelParams
from .solvers import KinkProfile, SolverConfig

_DENSE_QUAD_CFG = SolverConfig(rel_tol=1e-12, abs_tol=1e-12)


@dataclass(frozen=True)
class EnergyChargeReport:
    energy: float
    charge_quadrature: float
    charge_closed_form: float
    bps_defect: float
    params: ModelParams


@dataclass(frozen=True)
class DiagnosticsReport:
    max_bps_residual: float
    max_second_order_residual: float
    pp_product_max_abs: float
    pp_product_variation: float
    endpoint_p_values: tuple[float, float]


def total_energy(profile: KinkProfile, cfg: SolverConfig = _DENSE_QUAD_CFG) -> float:
    """Line integral of the energy density along the profile.

    Dense adaptive quadrature when the profile carries its closed-form
    evaluator, composite quadrature of the samples otherwise. Vacuum tails
    beyond the grid are excluded; their size is bounded by
    ``energy_tail_bound``.
    """
    if profile.solution is not None:
        sol = profile.solution
        return kernels.profile_quadrature(
            kernels.WHICH_ENERGY,
            sol.params.lam,
            sol.params.big_l,
            sol.x0,
            sol._reflect,
            sol._parity,
            profile.grid.x_min,
            profile.grid.x_max,
            cfg.rel_tol,
            cfg.abs_tol,
        )
    density = kernels.energy_density_arr(
        profile.alpha, profile.dalpha, profile.params.lam, profile.params.big_l
    )
    return float(_integrate_profile_samples(density, profile))


def kink_charge_quadrature(profile: KinkProfile, cfg: SolverConfig = _DENSE_QUAD_CFG) -> float:
    """Integral of the charge density along the profile."""
    if profile.solution is not None:
        sol = profile.solution
        return kernels.profile_quadrature(
            kernels.WHICH_CHARGE,
            sol.params.lam,
            sol.params.big_l,
            sol.x0,
            sol._reflect,
            sol._parity,
            profile.grid.x_min,
            profile.grid.x_max,
            cfg.rel_tol,
            cfg.abs_tol,
        )
    density = kernels.charge_density_arr(
        profile.alpha, profile.dalpha, profile.params.lam, profile.params.big_l
    )
    return float(_integrate_profile_samples(density, profile))


def _integrate_profile_samples(density: np.ndarray, profile: KinkProfile) -> float:
    from .solvers import integrate_samples

    return integrate_samples(density, profile.grid.spacing())


def kink_charge_closed_form(p: ModelParams) -> float:
    """Charge of one canonical rising kink, evaluated exactly.

    Q = (1/L) * [1 + ((1+kappa)/sqrt(kappa)) * arcsin(sqrt(kappa/(1+kappa)))].
    """
    k = p.kappa
    sk = math.sqrt(k)
    return (1.0 + (1.0 + k) / sk * math.asin(sk / math.sqrt(1.0 + k))) / p.big_l


def energy_tail_bound(profile: KinkProfile) -> float:
    """Bound on the energy excluded by grid truncation.

    The field approaches its vacua exponentially at rate 1/L, so each tail
    contributes at most delta^2 (1 + kappa) / L where delta is the field's
    distance from vacuum at the grid end.
    """
    p = profile.params

    def dist_to_vacuum(a: float) -> float:
        return abs(a - round(a / math.pi) * math.pi)

    d0 = dist_to_vacuum(float(profile.alpha[0]))
    d1 = dist_to_vacuum(float(profile.alpha[-1]))
    return (d0 * d0 + d1 * d1) * (1.0 + p.kappa) / p.big_l


def bps_defect(profile: KinkProfile, cfg: SolverConfig = _DENSE_QUAD_CFG) -> float:
    """Energy minus |charge|: zero on first-order solutions, positive otherwise."""
    return total_energy(profile, cfg) - abs(kink_charge_quadrature(profile, cfg))


def energy_charge_report(profile: KinkProfile, cfg: SolverConfig = _DENSE_QUAD_CFG) -> EnergyChargeReport:
    energy = total_energy(profile, cfg)
    q_quad = kink_charge_quadrature(profile, cfg)
    q_closed = profile.charge_orientation() * kink_charge_closed_form(profile.params)
    return EnergyChargeReport(
        energy=energy,
        charge_quadrature=q_quad,
        charge_closed_form=q_closed,
        bps_defect=energy - abs(q_quad),
        params=profile.params,
    )


def equivalence_diagnostics(profile: KinkProfile) -> DiagnosticsReport:
    """Residual and auxiliary-pair statistics over the sampled profile."""
    p = profile.params
    res = kernels.bps_residual_arr(
        profile.alpha, profile.dalpha, profile.sign.factor, p.lam, p.big_l
    )
    max_bps = float(np.max(np.abs(res)))

    from .solvers import differentiate

    ddalpha = differentiate(profile)
    res2 = kernels.second_order_residual_arr(
        profile.alpha[2:-2], profile.dalpha[2:-2], ddalpha[2:-2], p.lam, p.big_l
    )
    max_second = float(np.max(np.abs(res2))) if res2.size else 0.0

    pp, pm = kernels.p_plus_minus_arr(profile.alpha, profile.dalpha, p.lam, p.big_l)
    product = pp * pm
    pp_max = float(np.max(np.abs(product)))
    pp_var = float(np.sum(np.abs(np.diff(product))))
    endpoints = (
        float(max(abs(pp[0]), abs(pp[-1]))),
        float(max(abs(pm[0]), abs(pm[-1]))),
    )
    return DiagnosticsReport(
        max_bps_residual=max_bps,
        max_second_order_residual=max_second,
        pp_product_max_abs=pp_max,
        pp_product_variation=pp_var,
        endpoint_p_values=endpoints,
    )


@dataclass(frozen=True)
class SweepResult:
    kappa: float
    report: EnergyChargeReport | None
    error: str | None


def sweep(kappa_values, big_l: float, cfg: SolverConfig = _DENSE_QUAD_CFG) -> list[SweepResult]:
    """One energy/charge report per kappa; per-item failures are recorded
    and do not stop the sweep."""
    from .closed_form import ImplicitSolution

    results: list[SweepResult] = []
    for kappa in kappa_values:
        try:
            params = ModelParams.from_kappa(float(kappa), big_l)
            sol = ImplicitSolution(params=params)
            profile = sol.sample(sol.natural_grid())
            results.append(SweepResult(float(kappa), energy_charge_report(profile, cfg), None))
        except SkyrmeKinkError as exc:
            results.append(SweepResult(float(kappa), None, str(exc)))
    return results
