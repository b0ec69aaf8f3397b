"""Spatial grid, initial Gaussian wave packet, and the absorbing-boundary mask.

The absorber is a multiplicative logistic mask applied after every time step;
its two parameters are fixed analytically from the suppression target at the
lower box edge and the flatness requirement on the physical side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

#: ln(1e8); the mask drops to 1e-8 at the box edge over 3 of these e-foldings.
_LN_SUPPRESSION = math.log(1e8)


@dataclass(frozen=True)
class GridSpec:
    """Uniform spatial grid plus the propagation time step (atomic units)."""

    x_min: float
    x_max: float
    n_points: int
    dt: float

    def __post_init__(self):
        if not (self.x_min < 0.0 < self.x_max):
            raise ConfigurationError(
                f"grid must straddle the surface: x_min={self.x_min}, x_max={self.x_max}"
            )
        if self.n_points < 4 or self.n_points % 2:
            raise ConfigurationError(f"n_points must be even and >= 4, got {self.n_points}")
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be > 0, got {self.dt}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass(frozen=True)
class PacketSpec:
    """Initial Gaussian packet: center, signed mean velocity, relative momentum
    spread, particle mass."""

    x_center: float
    v_mean: float
    dv_rel: float
    mass: float

    def __post_init__(self):
        if self.v_mean == 0.0:
            raise ConfigurationError("packet needs a nonzero mean velocity")
        if not 0.0 < self.dv_rel < 1.0:
            raise ConfigurationError(f"dv_rel must be in (0, 1), got {self.dv_rel}")
        if not self.mass > 0:
            raise ConfigurationError(f"mass must be > 0, got {self.mass}")

    @property
    def k_mean(self) -> float:
        """Mean wavenumber m*v (hbar = 1)."""
        return self.mass * self.v_mean

    @property
    def sigma_k(self) -> float:
        return self.dv_rel * abs(self.k_mean)

    @property
    def sigma_x(self) -> float:
        """Minimum-uncertainty position width, sigma_x * sigma_k = 1/2."""
        return 0.5 / self.sigma_k


@dataclass(frozen=True)
class AbsorberSpec:
    """Logistic damping mask f(x) = 1 / (exp(-(x - a)/sigma) + 1)."""

    a: float
    sigma: float
    x_b: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ConfigurationError(f"sigma must be > 0, got {self.sigma}")
        if not self.x_b < self.a < 0:
            raise ConfigurationError(
                f"need x_b < a < 0, got x_b={self.x_b}, a={self.a}"
            )


@dataclass
class WaveField:
    """Complex wavefunction samples on a grid at time t."""

    grid: GridSpec
    psi: np.ndarray
    t: float = 0.0

    def norm(self) -> float:
        """Total probability sum(|psi|^2) * dx."""
        return float(np.sum(np.abs(self.psi) ** 2) * self.grid.dx)

    def copy(self) -> "WaveField":
        return WaveField(self.grid, self.psi.copy(), self.t)


def gaussian_packet(g: GridSpec, s: PacketSpec) -> WaveField:
    """Normalized minimum-uncertainty Gaussian with the requested mean momentum.

    The packet (out to 5 sigma_x) must fit inside the box.
    """
    sx = s.sigma_x
    if not (g.x_min + 5 * sx < s.x_center < g.x_max - 5 * sx):
        raise ConfigurationError(
            f"packet at {s.x_center} with 5*sigma_x = {5 * sx} does not fit in "
            f"[{g.x_min}, {g.x_max}]"
        )
    x = g.x()
    psi = np.exp(-((x - s.x_center) ** 2) / (4.0 * sx**2) + 1j * s.k_mean * x)
    psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * g.dx)
    return WaveField(g, psi, 0.0)


def calibrate_absorber(x_b: float) -> AbsorberSpec:
    """Fix (a, sigma) from f(x_b) = 1e-8 and |f - 1| <= 1e-16 at x = 0.

    With the worst case of the flatness condition at x = 0 the two conditions
    solve to a = (2/3) x_b and sigma = -x_b / (3 ln 1e8).
    """
    if not x_b < 0:
        raise ConfigurationError(f"x_b must be < 0, got {x_b}")
    return AbsorberSpec(a=2.0 * x_b / 3.0, sigma=-x_b / (3.0 * _LN_SUPPRESSION), x_b=x_b)


def damping_mask(g: GridSpec, a_spec: AbsorberSpec) -> np.ndarray:
    """Logistic mask sampled on the grid; values in (0, 1]."""
    # Exponent clipped so grids extending below x_b cannot overflow exp().
    arg = np.clip(-(g.x() - a_spec.a) / a_spec.sigma, None, 700.0)
    return 1.0 / (np.exp(arg) + 1.0)
