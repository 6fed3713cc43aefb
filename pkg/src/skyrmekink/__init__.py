"""Kink solitons of the reduced one-dimensional Skyrme model.

Closed-form profiles, independent first- and second-order solvers, and
energy/charge cross-checks, with a compiled kernel core and a pure-Python
fallback (see :func:`backend_name`).
"""

from ._backend import backend_name
from .analysis import (
    DiagnosticsReport,
    EnergyChargeReport,
    SweepResult,
    bps_defect,
    energy_charge_report,
    energy_tail_bound,
    equivalence_diagnostics,
    kink_charge_closed_form,
    kink_charge_quadrature,
    sweep,
    total_energy,
)
from .closed_form import (
    BranchSpec,
    ImplicitSolution,
    VRange,
    alpha_of_x,
    antiderivative,
    branch_map,
    partial_fraction_identity,
    transit_half_width,
    u_of_v,
    v_of_alpha,
    x_of_v,
)
from .errors import DomainError, NumericsError, SingularityError, SkyrmeKinkError
from .model import (
    KinkSign,
    ModelParams,
    PointState,
    bps_residual,
    charge_density,
    energy_density,
    p_plus_minus,
    second_order_residual,
    vacuum_nearest,
)
from .solvers import (
    Grid,
    KinkProfile,
    Provenance,
    SolverConfig,
    differentiate,
    integrate_bps,
    integrate_samples,
    quadrature,
    solve_second_order_bvp,
)

__version__ = "0.1.0"

__all__ = [
    "BranchSpec",
    "DiagnosticsReport",
    "DomainError",
    "EnergyChargeReport",
    "Grid",
    "ImplicitSolution",
    "KinkProfile",
    "KinkSign",
    "ModelParams",
    "NumericsError",
    "PointState",
    "Provenance",
    "SingularityError",
    "SkyrmeKinkError",
    "SolverConfig",
    "SweepResult",
    "VRange",
    "alpha_of_x",
    "antiderivative",
    "backend_name",
    "bps_defect",
    "bps_residual",
    "branch_map",
    "charge_density",
    "differentiate",
    "energy_charge_report",
    "energy_density",
    "energy_tail_bound",
    "equivalence_diagnostics",
    "integrate_bps",
    "integrate_samples",
    "kink_charge_closed_form",
    "kink_charge_quadrature",
    "p_plus_minus",
    "partial_fraction_identity",
    "quadrature",
    "second_order_residual",
    "solve_second_order_bvp",
    "sweep",
    "total_energy",
    "transit_half_width",
    "u_of_v",
    "v_of_alpha",
    "vacuum_nearest",
    "x_of_v",
]
