"""Attractive atom-surface potential, its regularized continuation, and the
harmonically shifted (oscillating-surface) version.

All functions take and return internal atomic units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PotentialParams:
    """Surface interaction parameters, atomic units.

    c4:    interaction strength (energy * length^4), > 0
    l:     reduced transition wavelength (length), > 0
    x0:    connection point of the regularizing continuation (length), > 0
    d:     surface oscillation amplitude (length), >= 0
    omega: surface oscillation angular frequency, >= 0

    d == 0 means a static surface regardless of omega.
    """

    c4: float
    l: float
    x0: float
    d: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        if not self.c4 > 0:
            raise ValueError(f"c4 must be > 0, got {self.c4}")
        if not self.l > 0:
            raise ValueError(f"l must be > 0, got {self.l}")
        if not self.x0 > 0:
            raise ValueError(f"x0 must be > 0, got {self.x0}")
        if self.d < 0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")

    @property
    def is_static(self) -> bool:
        """True when the shift d*sin(omega*t) vanishes identically."""
        return self.d == 0.0 or self.omega == 0.0

    def continuation_coefficients(self) -> tuple[float, float, float]:
        """(V(x0), V'(x0), constant floor V(x0) - V'(x0)*x0/2)."""
        v0 = casimir_vdw(self.x0, self)
        dv0 = casimir_vdw_derivative(self.x0, self)
        return v0, dv0, v0 - 0.5 * dv0 * self.x0


def _raw(x, c4: float, l: float):
    # Shared arithmetic so the piecewise form matches the bare potential bitwise.
    return -c4 / (x**3 * (x + l))


def casimir_vdw(x, p: PotentialParams):
    """Bare attractive surface potential -c4 / (x^3 (x + l)), valid for x > 0."""
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    if np.any(np.asarray(x) <= 0):
        raise ValueError("bare surface potential is only defined for x > 0")
    return _raw(x, p.c4, p.l)


def casimir_vdw_derivative(x, p: PotentialParams):
    """Closed-form dV/dx = c4 (4x + 3l) / (x^4 (x + l)^2), for x > 0."""
    x = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
    if np.any(np.asarray(x) <= 0):
        raise ValueError("derivative is only defined for x > 0")
    return p.c4 * (4.0 * x + 3.0 * p.l) / (x**4 * (x + p.l) ** 2)


def continued_potential(x, p: PotentialParams):
    """Potential with the close-range continuation, defined on all of R.

    Bare potential beyond x0; a parabola on [0, x0] whose value and slope are
    continuous at both joints; a constant for x < 0 so close-approach
    amplitude leaves toward -infinity instead of sticking.
    """
    v0, dv0, v_const = p.continuation_coefficients()
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(xa)

    upper = xa > p.x0
    mid = (xa >= 0.0) & ~upper
    low = xa < 0.0

    out[upper] = _raw(xa[upper], p.c4, p.l)
    dxm = xa[mid] - p.x0
    out[mid] = v0 + dv0 * dxm + (dv0 / (2.0 * p.x0)) * dxm**2
    out[low] = v_const
    return float(out[0]) if scalar else out


def oscillating_potential(x, t: float, p: PotentialParams):
    """Continued potential rigidly shifted by the surface displacement d*sin(omega*t)."""
    return continued_potential(np.asarray(x) - p.d * np.sin(p.omega * t), p)
