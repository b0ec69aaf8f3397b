"""Norm-preserving Crank-Nicolson propagation of a wave field over the
three-point finite-difference Hamiltonian, with per-step absorbing mask.

Time-dependent potentials are sampled at the midpoint of every step, which
keeps the scheme second order for the driven surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NumericalBreakdownError, StationarityTimeout
from .grid import AbsorberSpec, GridSpec, WaveField, damping_mask
from .potential import PotentialParams
from .units import BOHR_RADIUS_M

#: default probe offset above the connection point for the reflected-region norm
PROBE_OFFSET = 50e-9 / BOHR_RADIUS_M


@dataclass(frozen=True)
class FixedTime:
    """Propagate until t >= t_final."""

    t_final: float


@dataclass(frozen=True)
class Stationary:
    """Stop once the reflected-region norm is stationary.

    The norm beyond the probe must change by less than `eps` (relative) over
    one window (a full drive period, or `static_window` steps when static)
    while the centroid of the remaining field lies beyond the probe and moves
    outward. `step_cap` bounds the run; exceeding it raises
    StationarityTimeout carrying the partial result.
    """

    eps: float = 1e-5
    static_window: int = 1000
    step_cap: int = 5_000_000


@dataclass(frozen=True)
class SnapshotSpec:
    """Append (t, |psi|^2 on a decimated grid) rows to a CSV trace file."""

    every_steps: int
    path: str
    decimate: int = 1


@dataclass
class TridiagonalOperator:
    """Symmetric tridiagonal Hamiltonian: kinetic three-point stencil plus
    the potential on the diagonal."""

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray


@dataclass
class PropagationResult:
    final: WaveField
    reflected_norm_history: list = field(default_factory=list)
    absorbed_norm: float = 0.0
    steps: int = 0


def build_hamiltonian(g: GridSpec, potential_values: np.ndarray,
                      mass: float) -> TridiagonalOperator:
    """Three-point Hamiltonian with Dirichlet (zero) values outside the box."""
    if potential_values.shape[0] != g.n_points:
        raise ValueError(
            f"potential has {potential_values.shape[0]} samples, grid has {g.n_points}"
        )
    kap = 1.0 / (2.0 * mass * g.dx**2)
    off = np.full(g.n_points - 1, -kap, dtype=complex)
    diag = (2.0 * kap + potential_values).astype(complex)
    return TridiagonalOperator(lower=off, diag=diag, upper=off.copy())


def apply_hamiltonian(H: TridiagonalOperator, psi: np.ndarray) -> np.ndarray:
    out = H.diag * psi
    out[:-1] += H.upper * psi[1:]
    out[1:] += H.lower * psi[:-1]
    return out


def cn_step(fld: WaveField, H: TridiagonalOperator, dt: float) -> WaveField:
    """One Crank-Nicolson step (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi.

    For driven potentials H must be built at the midpoint t + dt/2.
    """
    tau = 0.5 * dt
    a_low = 1j * tau * H.lower
    a_diag = 1.0 + 1j * tau * H.diag
    a_up = 1j * tau * H.upper
    rhs = fld.psi - 1j * tau * apply_hamiltonian(H, fld.psi)
    out = np.empty_like(rhs)
    bad = _kernels.thomas_solve(a_low, a_diag, a_up, rhs, out)
    if bad:
        raise NumericalBreakdownError(
            f"tridiagonal pivot collapsed at grid index {bad - 1}", index=bad - 1
        )
    return WaveField(fld.grid, out, fld.t + dt)


def _chunk_plan(stop, dt: float, omega: float, is_static: bool,
                record_every: int | None):
    """Number of steps per bookkeeping chunk and (for Stationary) per window."""
    if isinstance(stop, Stationary):
        if is_static or omega == 0.0:
            window = stop.static_window
        else:
            window = max(1, round(2.0 * math.pi / (omega * dt)))
        return (record_every or window), window
    n_steps = max(1, round(stop.t_final / dt))
    return (record_every or max(1, n_steps // 200)), n_steps


def propagate(initial: WaveField, p: PotentialParams, g: GridSpec,
              absorber: AbsorberSpec, mass: float, stop,
              x_probe: float | None = None,
              record_every: int | None = None,
              snapshot: SnapshotSpec | None = None) -> PropagationResult:
    """Advance the field under the (possibly oscillating) surface potential
    until the stop rule fires, applying the absorbing mask after every step.

    Static configurations (d = 0 or omega = 0) reuse one factorization of the
    implicit system for the whole run.
    """
    if x_probe is None:
        x_probe = p.x0 + PROBE_OFFSET
    x = g.x()
    dx, dt = g.dx, g.dt
    mask = damping_mask(g, absorber)
    kap = 1.0 / (2.0 * mass * dx**2)
    tau = 0.5 * dt
    v0, dv0, v_const = p.continuation_coefficients()

    psi = initial.psi.astype(np.complex128, copy=True)
    t = initial.t
    work = np.empty_like(psi)
    i_probe = int(np.searchsorted(x, x_probe))
    initial_norm = float(np.sum(np.abs(psi) ** 2) * dx)

    static = p.is_static
    if static:
        v_grid = np.empty_like(x)
        _kernels.potential_on_grid(x, 0.0, p.c4, p.l, p.x0, v0, dv0, v_const, v_grid)
        h_diag = 2.0 * kap + v_grid
        adiag = 1.0 + 1j * tau * h_diag
        bdiag = 1.0 - 1j * tau * h_diag
        ao = -1j * tau * kap
        bo = -ao
        lmul = np.empty(psi.shape[0] - 1, dtype=np.complex128)
        dinv = np.empty_like(psi)
        bad = _kernels.factor_cn(adiag, ao, lmul, dinv)
        if bad:
            raise NumericalBreakdownError(
                f"tridiagonal pivot collapsed at grid index {bad - 1}",
                step=0, index=bad - 1,
            )
    else:
        adiag = np.empty_like(psi)

    chunk, window = _chunk_plan(stop, dt, p.omega, static, record_every)
    fixed_steps = None
    if isinstance(stop, FixedTime):
        fixed_steps = max(1, round(stop.t_final / dt))

    history: list[tuple[float, float]] = []
    hist_steps: list[int] = []
    hist_cent: list[float] = []
    steps_done = 0
    snap_file = open(snapshot.path, "a") if snapshot is not None else None
    snap_due = snapshot.every_steps if snapshot is not None else None

    def reflected_norm() -> float:
        return float(np.sum(np.abs(psi[i_probe:]) ** 2) * dx)

    def centroid() -> float:
        w = np.abs(psi) ** 2
        tot = w.sum()
        return float((x * w).sum() / tot) if tot > 0 else math.nan

    def record():
        history.append((t, reflected_norm()))
        hist_steps.append(steps_done)
        hist_cent.append(centroid())

    record()

    try:
        while True:
            if fixed_steps is not None:
                n_do = min(chunk, fixed_steps - steps_done)
                if n_do <= 0:
                    break
            else:
                n_do = chunk
                if steps_done + n_do > stop.step_cap:
                    n_do = stop.step_cap - steps_done
                    if n_do <= 0:
                        final = WaveField(g, psi, t)
                        partial = PropagationResult(
                            final, history,
                            initial_norm - final.norm(), steps_done)
                        raise StationarityTimeout(
                            f"no stationarity within {stop.step_cap} steps",
                            partial=partial)

            if static:
                _kernels.cn_chunk_static(psi, bdiag, bo, ao, lmul, dinv, mask,
                                         n_do, work)
            else:
                mid = t + (np.arange(n_do) + 0.5) * dt
                shifts = p.d * np.sin(p.omega * mid)
                s_bad, i_bad = _kernels.cn_chunk_driven(
                    psi, x, tau, kap, p.c4, p.l, p.x0, v0, dv0, v_const,
                    shifts, mask, work, adiag)
                if s_bad >= 0:
                    raise NumericalBreakdownError(
                        f"tridiagonal pivot collapsed at grid index {i_bad}",
                        step=steps_done + s_bad, index=i_bad)
            steps_done += n_do
            t = initial.t + steps_done * dt
            record()

            if snap_file is not None and steps_done >= snap_due:
                dens = np.abs(psi[:: snapshot.decimate]) ** 2
                row = ",".join(repr(v) for v in dens)
                snap_file.write(f"{t!r},{row}\n")
                snap_due = steps_done + snapshot.every_steps

            if fixed_steps is None and steps_done >= 2 * window:
                # compare against the newest record at least one window back
                j = len(hist_steps) - 1
                while j > 0 and hist_steps[j] > steps_done - window:
                    j -= 1
                refl_then = history[j][1]
                refl_now = history[-1][1]
                cent_now = hist_cent[-1]
                denom = max(abs(refl_then), 1e-300)
                moving_out = cent_now > hist_cent[j] and cent_now > x_probe
                if abs(refl_now - refl_then) / denom < stop.eps and moving_out:
                    break
    finally:
        if snap_file is not None:
            snap_file.close()

    final = WaveField(g, psi, t)
    return PropagationResult(
        final=final,
        reflected_norm_history=history,
        absorbed_norm=initial_norm - final.norm(),
        steps=steps_done,
    )
