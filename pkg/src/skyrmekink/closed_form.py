"""Closed-form kink construction.

The chain runs u = cos(alpha) -> transform variable v -> antiderivative ->
implicit relation x(v), inverted numerically (monotone bisection) to give
alpha(x) at any point. All public coordinates are in original units; the
rescaled form is internal to the kernels.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import DomainError, SingularityError
from .model import KinkSign, ModelParams
from .solvers import Grid, KinkProfile, Provenance


@dataclass(frozen=True)
class VRange:
    """Open interval of the transform variable; the log singularities sit
    exactly at the endpoints."""

    v_min: float
    v_max: float

    @classmethod
    def from_params(cls, p: ModelParams) -> "VRange":
        lo, hi = kernels.v_range(p.kappa)
        return cls(v_min=lo, v_max=hi)

    @property
    def width(self) -> float:
        return self.v_max - self.v_min

    def contains_strictly(self, v: float) -> bool:
        return self.v_min < v < self.v_max


def u_of_v(v: float, p: ModelParams) -> float:
    """cos(alpha) as a function of the transform variable."""
    rng = VRange.from_params(p)
    slack = 1e-12 * rng.width
    if not rng.v_min - slack <= v <= rng.v_max + slack:
        raise DomainError(f"v={v!r} outside [{rng.v_min!r}, {rng.v_max!r}]")
    return kernels.u_of_v(v, p.kappa)


def v_of_alpha(alpha: float, p: ModelParams) -> float:
    """Transform variable along one fundamental branch, alpha in (0, pi).

    Evaluated in a rationalized form that is exact at alpha = pi/2.
    """
    if not 0.0 < alpha < math.pi:
        raise DomainError(f"alpha={alpha!r} outside (0, pi)")
    return kernels.v_of_alpha(alpha, p.kappa)


def antiderivative(v: float, p: ModelParams) -> float:
    """Antiderivative of the transformed integrand, normalized to 0 at v = 0."""
    rng = VRange.from_params(p)
    if not rng.contains_strictly(v):
        raise SingularityError(f"v={v!r} at or beyond a log singularity")
    return kernels.antiderivative_v(v, p.kappa)


def partial_fraction_identity(v: float, kappa: float) -> tuple[float, float]:
    """Both sides of the partial-fraction split of the transformed integrand.

    Returns (lhs, rhs): the single rational expression and the three-term
    sum. Exposed for property testing.
    """
    g = v * v + 2.0 * v - kappa
    h = v * v - 2.0 * v - kappa
    q = v * v + kappa
    if g == 0.0 or h == 0.0 or q == 0.0:
        raise SingularityError("partial-fraction denominator vanishes")
    w = v * v - kappa
    lhs = -2.0 * (1.0 + kappa) * w * w / ((w * w - 4.0 * v * v) * q)
    rhs = (v + 1.0) / g - (v - 1.0) / h - 2.0 * kappa / q
    return lhs, rhs


class BranchSpec(NamedTuple):
    vacuum_base: int
    sign: KinkSign
    valid: bool


def branch_map(m: int, n: int) -> BranchSpec:
    """Reduce boundary data (alpha(-inf), alpha(inf)) = (m*pi, n*pi) to a
    representable kink.

    Only adjacent vacua admit nontrivial finite-energy solutions. The base is
    min(m, n); rising pairs are unreflected (MINUS), falling pairs reflected
    (PLUS).
    """
    if abs(m - n) != 1:
        return BranchSpec(vacuum_base=0, sign=KinkSign.MINUS, valid=False)
    if n == m + 1:
        return BranchSpec(vacuum_base=m, sign=KinkSign.MINUS, valid=True)
    return BranchSpec(vacuum_base=n, sign=KinkSign.PLUS, valid=True)


@dataclass(frozen=True)
class ImplicitSolution:
    """Evaluable closed-form kink.

    ``sign`` toggles the spatial reflection through x0 (MINUS is the rising
    branch as constructed, PLUS its mirror). ``vacuum_base`` shifts the
    profile into (vacuum_base*pi, (vacuum_base+1)*pi); odd bases are
    admitted, in which case the profile satisfies the opposite first-order
    branch (see ``equation_branch``).
    """

    params: ModelParams
    x0: float = 0.0
    sign: KinkSign = KinkSign.MINUS
    vacuum_base: int = 0

    def __post_init__(self):
        if not math.isfinite(self.x0):
            raise DomainError("x0 must be finite")
        if self.vacuum_base != int(self.vacuum_base):
            raise DomainError("vacuum_base must be an integer")

    @property
    def _reflect(self) -> float:
        return 1.0 if self.sign is KinkSign.MINUS else -1.0

    @property
    def _parity(self) -> float:
        return 1.0 if self.vacuum_base % 2 == 0 else -1.0

    @property
    def equation_branch(self) -> KinkSign:
        """First-order branch the profile actually satisfies."""
        rising_canonical = self._reflect * self._parity
        return KinkSign.MINUS if rising_canonical > 0.0 else KinkSign.PLUS

    def alpha(self, x):
        """Field value at x (scalar or array), in original units."""
        x_arr = np.asarray(x, dtype=np.float64)
        xi = self._reflect * (x_arr - self.x0) / self.params.big_l
        hat = kernels.alpha_hat_arr(np.atleast_1d(xi), self.params.kappa)
        out = self.vacuum_base * math.pi + hat.reshape(xi.shape)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def dalpha(self, x):
        """Spatial derivative of the field at x (scalar or array)."""
        x_arr = np.asarray(x, dtype=np.float64)
        xi = self._reflect * (x_arr - self.x0) / self.params.big_l
        hat = kernels.alpha_hat_arr(np.atleast_1d(xi), self.params.kappa)
        sa = np.sin(hat)
        slope = self._reflect * sa / np.sqrt(
            self.params.big_l**2 + self.params.lam * sa * sa
        )
        out = slope.reshape(xi.shape)
        if np.ndim(x) == 0:
            return float(out)
        return out

    def sample(self, grid: Grid) -> KinkProfile:
        """Sample onto a grid, keeping the dense evaluator attached."""
        return KinkProfile(
            grid=grid,
            alpha=self.alpha(grid.points),
            dalpha=self.dalpha(grid.points),
            params=self.params,
            sign=self.equation_branch,
            vacuum_base=self.vacuum_base,
            provenance=Provenance.CLOSED_FORM,
            solution=self,
        )

    def natural_grid(self, n: int = 2001, tail_cut: float = 1e-8) -> Grid:
        """Symmetric uniform grid wide enough that the field is within
        tail_cut of its vacua at the ends."""
        w = transit_half_width(self.params, tail_cut)
        return Grid.uniform(self.x0 - w, self.x0 + w, n)


def transit_half_width(p: ModelParams, tail_cut: float = 1e-8) -> float:
    """Distance from center at which the field is within tail_cut of vacuum."""
    if not 0.0 < tail_cut < math.pi / 4.0:
        raise DomainError("tail_cut must lie in (0, pi/4)")
    kappa = p.kappa
    if kappa < kernels.KAPPA_SG:
        return p.big_l * math.log(math.tan(0.5 * (math.pi - tail_cut)))
    v = kernels.v_of_alpha(math.pi - tail_cut, kappa)
    return p.big_l * kernels.xi_of_v(v, kappa)


def x_of_v(v: float, sol: ImplicitSolution) -> float:
    """Position at which the transform variable equals v (minus branch rises
    with v; the plus branch mirrors through x0)."""
    rng = VRange.from_params(sol.params)
    if not rng.contains_strictly(v):
        raise SingularityError(f"v={v!r} at or beyond a log singularity")
    xi = kernels.xi_of_v(v, sol.params.kappa)
    return sol.x0 + sol._reflect * sol.params.big_l * xi


def alpha_of_x(x, sol: ImplicitSolution):
    """Field value by numerical inversion of the implicit relation."""
    return sol.alpha(x)
