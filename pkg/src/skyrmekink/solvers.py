"""Independent numerical machinery: adaptive first-order integration,
shooting solution of the second-order boundary value problem, adaptive
quadrature, and finite differencing.

These routes never consult the closed-form construction, so they can serve
as cross-checks against it.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Callable

import numpy as np

from ._backend import kernels
from .errors import DomainError, NumericsError
from .model import KinkSign, ModelParams

if TYPE_CHECKING:
    from .closed_form import ImplicitSolution


class Provenance(Enum):
    CLOSED_FORM = "closed_form"
    ODE_FIRST_ORDER = "ode_first_order"
    BVP_SECOND_ORDER = "bvp_second_order"


@dataclass(frozen=True)
class Grid:
    """Ordered sample abscissae."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 1 or pts.size < 2:
            raise DomainError("grid needs at least two points")
        if not np.all(np.diff(pts) > 0.0):
            raise DomainError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, x_min: float, x_max: float, n: int) -> "Grid":
        if not x_min < x_max:
            raise DomainError("x_min must be below x_max")
        if n < 2:
            raise DomainError("n must be at least 2")
        return cls(np.linspace(x_min, x_max, n))

    @property
    def x_min(self) -> float:
        return float(self.points[0])

    @property
    def x_max(self) -> float:
        return float(self.points[-1])

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.x_min + self.x_max)

    def __len__(self) -> int:
        return int(self.points.size)

    def spacing(self) -> float:
        """Uniform spacing; raises if the grid is not uniform."""
        diffs = np.diff(self.points)
        h = float(diffs[0])
        if np.max(np.abs(diffs - h)) > 1e-12 * max(abs(h), 1.0):
            raise DomainError("grid is not uniform")
        return h


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 500_000
    tail_cut: float = 1e-6

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("tolerances must be positive")
        if not 0.0 < self.tail_cut < math.pi / 4.0:
            raise DomainError("tail_cut must lie in (0, pi/4)")
        if self.max_steps < 1:
            raise DomainError("max_steps must be positive")


@dataclass(frozen=True)
class KinkProfile:
    """Sampled kink branch.

    ``sign`` is the first-order equation branch the samples satisfy.
    ``solution`` carries the evaluable closed-form object when the profile
    was produced by it, enabling dense quadrature.
    """

    grid: Grid
    alpha: np.ndarray
    dalpha: np.ndarray
    params: ModelParams
    sign: KinkSign
    vacuum_base: int
    provenance: Provenance
    solution: "ImplicitSolution | None" = field(default=None, repr=False)

    def __post_init__(self):
        a = np.ascontiguousarray(self.alpha, dtype=np.float64)
        da = np.ascontiguousarray(self.dalpha, dtype=np.float64)
        if a.shape != self.grid.points.shape or da.shape != self.grid.points.shape:
            raise DomainError("alpha/dalpha arrays must match the grid")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "dalpha", da)

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    def charge_orientation(self) -> float:
        """Sign of the kink charge: +1 for the minus branch, -1 for the plus branch."""
        return 1.0 if self.sign is KinkSign.MINUS else -1.0

    def with_dalpha_scaled(self, factor: float) -> "KinkProfile":
        """Same field samples with the derivative scaled; detaches the dense evaluator."""
        return replace(self, dalpha=self.dalpha * factor, solution=None)

    def shifted(self, base_offset: int) -> "KinkProfile":
        """Translate the field by base_offset*pi.

        An odd offset moves the profile onto an interval where sin flips
        sign, so the satisfied first-order branch flips with it.
        """
        sign = self.sign if base_offset % 2 == 0 else self.sign.flipped()
        return replace(
            self,
            alpha=self.alpha + base_offset * math.pi,
            vacuum_base=self.vacuum_base + base_offset,
            sign=sign,
            solution=None,
        )

    def mirrored(self) -> "KinkProfile":
        """Mirror through the grid midpoint; requires a symmetric grid."""
        pts = self.grid.points
        mid = self.grid.midpoint
        if not np.allclose(pts + pts[::-1], 2.0 * mid, rtol=0.0, atol=1e-9 * max(1.0, abs(mid))):
            raise DomainError("mirroring requires a grid symmetric about its midpoint")
        return replace(
            self,
            alpha=self.alpha[::-1].copy(),
            dalpha=-self.dalpha[::-1],
            sign=self.sign.flipped(),
            solution=None,
        )


def integrate_bps(
    p: ModelParams,
    x0: float,
    sign: KinkSign,
    cfg: SolverConfig,
    grid: Grid,
) -> KinkProfile:
    """Integrate the first-order kink equation outward from alpha(x0) = pi/2.

    The minus branch rises from 0 to pi; the plus branch is its mirror
    through x0.
    """
    if not grid.x_min <= x0 <= grid.x_max:
        raise DomainError("grid must span x0")
    x_rel = grid.points - x0
    if sign is KinkSign.MINUS:
        alpha = kernels.integrate_bps_canonical(
            x_rel, p.lam, p.big_l, cfg.rel_tol, cfg.abs_tol, cfg.max_steps
        )
    else:
        alpha = kernels.integrate_bps_canonical(
            -x_rel[::-1], p.lam, p.big_l, cfg.rel_tol, cfg.abs_tol, cfg.max_steps
        )[::-1]
    sa = np.sin(alpha)
    dalpha = -sign.factor * sa / np.sqrt(p.big_l**2 + p.lam * sa * sa)
    return KinkProfile(
        grid=grid,
        alpha=alpha,
        dalpha=dalpha,
        params=p,
        sign=sign,
        vacuum_base=0,
        provenance=Provenance.ODE_FIRST_ORDER,
    )


def solve_second_order_bvp(p: ModelParams, cfg: SolverConfig, grid: Grid) -> KinkProfile:
    """Solve the second-order field equation with vacuum boundary data by shooting.

    The launch slope at alpha = tail_cut is bisected until the trajectory
    neither turns back nor runs past pi; the converged trajectory is then
    translated so alpha = pi/2 at the grid midpoint and sampled.
    """
    _, _, dalpha_center = kernels.shoot_separatrix(
        p.lam, p.big_l, cfg.tail_cut, cfg.rel_tol, cfg.abs_tol, cfg.max_steps
    )
    x_rel = grid.points - grid.midpoint
    alpha, dalpha = kernels.integrate_second_order(
        x_rel, 0.5 * math.pi, dalpha_center, p.lam, p.big_l,
        cfg.rel_tol, cfg.abs_tol, cfg.max_steps,
    )
    return KinkProfile(
        grid=grid,
        alpha=alpha,
        dalpha=dalpha,
        params=p,
        sign=KinkSign.MINUS,
        vacuum_base=0,
        provenance=Provenance.BVP_SECOND_ORDER,
    )


def quadrature(f: Callable[[float], float], a: float, b: float, cfg: SolverConfig) -> float:
    """Adaptive Simpson integral of ``f`` over [a, b]."""
    if not a < b:
        raise DomainError("quadrature requires a < b")
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps = max(cfg.abs_tol, cfg.rel_tol * abs(whole))
    return _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, eps, 60)


def _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, eps, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if depth <= 0:
        raise NumericsError("adaptive quadrature failed to converge")
    return _adaptive_simpson(
        f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1
    ) + _adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1)


def differentiate(profile: KinkProfile) -> np.ndarray:
    """Second-derivative samples of alpha by fourth-order central differences.

    Requires a uniform grid of at least five points; the two points at each
    end use one-sided stencils of lower order.
    """
    y = profile.alpha
    n = y.size
    if n < 5:
        raise DomainError("differentiate needs at least five grid points")
    h = profile.grid.spacing()
    out = np.empty_like(y)
    out[2:-2] = (
        -y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]
    ) / (12.0 * h * h)
    out[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / (h * h)
    out[1] = (y[0] - 2.0 * y[1] + y[2]) / (h * h)
    out[-2] = (y[-3] - 2.0 * y[-2] + y[-1]) / (h * h)
    out[-1] = (2.0 * y[-1] - 5.0 * y[-2] + 4.0 * y[-3] - y[-4]) / (h * h)
    return out


def integrate_samples(values: np.ndarray, h: float) -> float:
    """Composite Simpson integral of uniformly spaced samples.

    Falls back to the 3/8 rule on the last three intervals when the interval
    count is odd, and to the trapezoid rule for very short inputs.
    """
    y = np.asarray(values, dtype=np.float64)
    n = y.size
    if n < 2:
        return 0.0
    if n == 2:
        return 0.5 * h * (y[0] + y[1])
    m = n - 1
    if m % 2 == 0:
        return _simpson_even(y, h)
    head = 0.0 if n == 4 else _simpson_even(y[: n - 3], h)
    tail = 3.0 * h / 8.0 * (y[-4] + 3.0 * y[-3] + 3.0 * y[-2] + y[-1])
    return head + tail


def _simpson_even(y: np.ndarray, h: float) -> float:
    return h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-2:2]))
