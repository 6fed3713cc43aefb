"""Pointwise definitions of the reduced one-dimensional Skyrme kink model.

Everything here is a pure function of its arguments; the heavy lifting is
delegated to the kernel backend.
"""

import math
from dataclasses import dataclass
from enum import Enum

from ._backend import kernels
from .errors import DomainError


class KinkSign(Enum):
    """Selects the +/- branch of the first-order equation."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> float:
        """+1.0 for the plus branch, -1.0 for the minus branch."""
        return 1.0 if self is KinkSign.PLUS else -1.0

    def flipped(self) -> "KinkSign":
        return KinkSign.MINUS if self is KinkSign.PLUS else KinkSign.PLUS


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the reduced model: lam > 0 and the period scale big_l > 0.

    The dimensionless combination kappa = lam / big_l**2 is always derived,
    never stored, so parameter triples cannot drift out of consistency.
    """

    lam: float
    big_l: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise DomainError(f"lam must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(self.big_l) and self.big_l > 0.0):
            raise DomainError(f"big_l must be positive and finite, got {self.big_l!r}")

    @property
    def kappa(self) -> float:
        return self.lam / (self.big_l * self.big_l)

    @classmethod
    def from_kappa(cls, kappa: float, big_l: float = 1.0) -> "ModelParams":
        """Build params with the given kappa at the given period scale."""
        if not (math.isfinite(kappa) and kappa > 0.0):
            raise DomainError(f"kappa must be positive and finite, got {kappa!r}")
        return cls(lam=kappa * big_l * big_l, big_l=big_l)


@dataclass(frozen=True)
class PointState:
    """Field value and spatial derivative at a single point."""

    alpha: float
    dalpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.dalpha)):
            raise DomainError("PointState requires finite alpha and dalpha")


def energy_density(s: PointState, p: ModelParams) -> float:
    """Reduced energy density (1/2)[a'^2 + sin^2(a)/L^2 + (lam/L^2) a'^2 sin^2(a)]."""
    return kernels.energy_density(s.alpha, s.dalpha, p.lam, p.big_l)


def charge_density(s: PointState, p: ModelParams) -> float:
    """Kink charge integrand (1/L) sin(a) sqrt(1 + kappa sin^2(a)) a'."""
    return kernels.charge_density(s.alpha, s.dalpha, p.lam, p.big_l)


def bps_residual(s: PointState, sign: KinkSign, p: ModelParams) -> float:
    """First-order residual a' +/- sin(a)/sqrt(L^2 + lam sin^2(a))."""
    return kernels.bps_residual(s.alpha, s.dalpha, sign.factor, p.lam, p.big_l)


def second_order_residual(
    alpha: float, dalpha: float, ddalpha: float, p: ModelParams
) -> float:
    """Residual of the field equation: a'' - sin(2a)(1 - lam a'^2) / (2(L^2 + lam sin^2 a))."""
    return kernels.second_order_residual(alpha, dalpha, ddalpha, p.lam, p.big_l)


def p_plus_minus(s: PointState, p: ModelParams) -> tuple[float, float]:
    """The auxiliary pair P+- = sqrt(L^2 + lam sin^2 a) a' +- sin(a)."""
    return kernels.p_plus_minus(s.alpha, s.dalpha, p.lam, p.big_l)


def vacuum_nearest(alpha: float) -> int:
    """Integer n minimizing |alpha - n*pi|; ties break toward the smaller n."""
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    return int(math.ceil(alpha / math.pi - 0.5))
