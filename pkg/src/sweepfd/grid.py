"""1D grid functions: storage, initial profiles, norms and moments.

A Field1D holds N samples u_j at x_j = x0 + j*dx.  The first sample
(index 0) is the distinguished boundary sample that asymmetric sweeps
treat specially; all modified norms correct for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateFieldError, ParameterError, SingularCoefficientError, SizeError


class BoundaryKind(Enum):
    PERIODIC = "periodic"
    FIXED_ENDS = "fixed-ends"


@dataclass
class Field1D:
    """Grid function u_j on a uniform 1D grid.

    values are stored 0-based; sample 0 sits at x0.  With periodic
    boundaries sample N wraps back onto sample 0.
    """

    values: np.ndarray
    dx: float
    x0: float = 0.0
    boundary: BoundaryKind = BoundaryKind.PERIODIC

    def __post_init__(self):
        self.values = np.array(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size < 3:
            raise SizeError("a field needs at least 3 samples")
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ParameterError(f"dx must be positive and finite, got {self.dx}")
        if not math.isfinite(self.x0):
            raise ParameterError("x0 must be finite")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("all samples must be finite")

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        """Sample coordinates x_j = x0 + j*dx."""
        return self.x0 + self.dx * np.arange(self.values.size)

    def copy(self) -> "Field1D":
        return Field1D(self.values.copy(), self.dx, self.x0, self.boundary)


def gaussian_profile(n: int, x0: float, dx: float, center: float, sigma: float,
                     boundary: BoundaryKind = BoundaryKind.PERIODIC) -> Field1D:
    """Gaussian pulse exp(-(x - center)^2 / (2 sigma^2))."""
    if not (sigma > 0):
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if not (dx > 0):
        raise ParameterError(f"dx must be positive, got {dx}")
    x = x0 + dx * np.arange(n)
    return Field1D(np.exp(-((x - center) ** 2) / (2.0 * sigma ** 2)), dx, x0, boundary)


def sextic_profile(n: int, x0: float, dx: float, center: float,
                   boundary: BoundaryKind = BoundaryKind.PERIODIC) -> Field1D:
    """Steep but smooth pulse exp(-((x - center)/2)^6)."""
    if not (dx > 0):
        raise ParameterError(f"dx must be positive, got {dx}")
    x = x0 + dx * np.arange(n)
    return Field1D(np.exp(-(((x - center) / 2.0) ** 6)), dx, x0, boundary)


def norm(f: Field1D) -> float:
    """Plain sum of samples (the quantity diffusion sweeps conserve)."""
    return float(np.sum(f.values))


def abs_moment(f: Field1D) -> float:
    """<|x|> = sum |x_j| u_j / sum u_j."""
    total = np.sum(f.values)
    if total == 0.0:
        raise DegenerateFieldError("abs_moment of a zero-norm field")
    return float(np.sum(np.abs(f.x) * f.values) / total)


def abs_weighted_mean(f: Field1D) -> float:
    """<<x>> = sum x_j |u_j| / sum |u_j| (mean with respect to |u|)."""
    weights = np.abs(f.values)
    total = np.sum(weights)
    if total == 0.0:
        raise DegenerateFieldError("abs_weighted_mean of an all-zero field")
    return float(np.sum(f.x * weights) / total)


@dataclass(frozen=True)
class ModifiedNormTag:
    """Boundary weight chi of a sweep's conserved quantity.

    An asymmetric sweep does not conserve sum(u) but sum(u) + (chi - 1) u_0,
    where chi depends on the sweep coefficients and direction.
    """

    weight: float

    @classmethod
    def advection(cls, s: float, ascending: bool = True) -> "ModifiedNormTag":
        """chi = c / (1 -+ s) with c = sqrt(1 - s^2)."""
        if abs(s) >= 1.0:
            raise ParameterError(f"advection coefficient |s| must be < 1, got {s}")
        denom = (1.0 - s) if ascending else (1.0 + s)
        if denom == 0.0:
            raise SingularCoefficientError("modified norm undefined at s = +-1")
        return cls(math.sqrt(1.0 - s * s) / denom)

    @classmethod
    def roberts_weiss(cls, eta: float, ascending: bool = True) -> "ModifiedNormTag":
        """chi = sqrt(1 + eta) for ascending sweeps, sqrt(1 - eta) for descending."""
        arg = (1.0 + eta) if ascending else (1.0 - eta)
        if arg < 0.0:
            raise ParameterError(f"modified norm weight undefined for eta = {eta}")
        return cls(math.sqrt(arg))

    @classmethod
    def advection_diffusion(cls, alpha: float, beta: float, lam: float,
                            ascending: bool = True) -> "ModifiedNormTag":
        """chi = alpha/(1 - beta) for ascending sweeps, alpha/(1 - lam) for descending."""
        denom = (1.0 - beta) if ascending else (1.0 - lam)
        if denom == 0.0:
            raise SingularCoefficientError("modified norm weight has a vanishing denominator")
        return cls(alpha / denom)


def modified_norm(f: Field1D, tag: ModifiedNormTag) -> float:
    """Norm plus the boundary-sample correction; equals norm(f) when u_0 = 0."""
    return norm(f) + (tag.weight - 1.0) * float(f.values[0])
