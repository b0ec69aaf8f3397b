"""Compiled inner loops: potential sampling, Thomas elimination, and the
Crank-Nicolson stepping chunks.

The implicit system (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi has a complex
symmetric tridiagonal matrix whose pivots satisfy Re(d_k) >= 1 (the recurrence
d_k = 1 + i*tau*h_k + (tau*kap)^2 / d_{k-1} only ever adds a positive real
part), so elimination without pivoting cannot break down; the magnitude guard
below is a belt-and-braces check.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _potential_point(xi: float, c4: float, l: float, x0: float,
                     v0: float, dv0: float, v_const: float) -> float:
    if xi > x0:
        return -c4 / (xi * xi * xi * (xi + l))
    if xi >= 0.0:
        dxi = xi - x0
        return v0 + dv0 * dxi + (dv0 / (2.0 * x0)) * dxi * dxi
    return v_const


@njit(cache=True)
def potential_on_grid(x, shift, c4, l, x0, v0, dv0, v_const, out):
    for i in range(x.shape[0]):
        out[i] = _potential_point(x[i] - shift, c4, l, x0, v0, dv0, v_const)
    return out


@njit(cache=True)
def thomas_solve(lower, diag, upper, rhs, out):
    """General complex tridiagonal solve without pivoting.

    Returns the 1-based index of a collapsed pivot, or 0 on success.
    """
    n = diag.shape[0]
    cp = np.empty(n - 1, dtype=np.complex128)
    d = diag[0]
    if abs(d) < 1e-300:
        return 1
    cp[0] = upper[0] / d
    out[0] = rhs[0] / d
    for i in range(1, n):
        denom = diag[i] - lower[i - 1] * cp[i - 1]
        if abs(denom) < 1e-300:
            return i + 1
        if i < n - 1:
            cp[i] = upper[i] / denom
        out[i] = (rhs[i] - lower[i - 1] * out[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        out[i] = out[i] - cp[i] * out[i + 1]
    return 0


@njit(cache=True)
def factor_cn(adiag, ao, lmul, dinv):
    """Prefactor the constant-offdiagonal system: multipliers and 1/pivots.

    Returns 0, or the 1-based index where the pivot magnitude collapsed.
    """
    n = adiag.shape[0]
    d = adiag[0]
    if abs(d) < 1e-300:
        return 1
    dinv[0] = 1.0 / d
    for i in range(1, n):
        li = ao * dinv[i - 1]
        d = adiag[i] - li * ao
        if abs(d) < 1e-300:
            return i + 1
        lmul[i - 1] = li
        dinv[i] = 1.0 / d
    return 0


@njit(cache=True, fastmath=True)
def cn_chunk_static(psi, bdiag, bo, ao, lmul, dinv, mask, nsteps, work):
    """Advance `nsteps` Crank-Nicolson steps for a time-independent potential,
    applying the damping mask after each step. Factorization is reused."""
    n = psi.shape[0]
    for _ in range(nsteps):
        # right-hand side (no loop-carried dependency; vectorizes)
        work[0] = bdiag[0] * psi[0] + bo * psi[1]
        for i in range(1, n - 1):
            work[i] = bdiag[i] * psi[i] + bo * (psi[i - 1] + psi[i + 1])
        work[n - 1] = bdiag[n - 1] * psi[n - 1] + bo * psi[n - 2]
        # forward elimination
        for i in range(1, n):
            work[i] = work[i] - lmul[i - 1] * work[i - 1]
        # back substitution, fused with the absorber mask
        xv = work[n - 1] * dinv[n - 1]
        psi[n - 1] = xv * mask[n - 1]
        for i in range(n - 2, -1, -1):
            xv = (work[i] - ao * xv) * dinv[i]
            psi[i] = xv * mask[i]


@njit(cache=True, fastmath=True)
def cn_chunk_driven(psi, x, tau, kap, c4, l, x0, v0, dv0, v_const,
                    shifts, mask, work, adiag):
    """Advance one chunk with the potential re-sampled at the midpoint shift
    of every step; the tridiagonal factorization is rebuilt in-place.

    Returns (step, index) of a pivot collapse, or (-1, -1) on success.
    """
    n = psi.shape[0]
    ao = -1j * tau * kap
    bo = -ao
    for s in range(shifts.shape[0]):
        sh = shifts[s]
        for i in range(n):
            v = _potential_point(x[i] - sh, c4, l, x0, v0, dv0, v_const)
            h = 2.0 * kap + v
            adiag[i] = 1.0 + 1j * tau * h
            work[i] = (1.0 - 1j * tau * h) * psi[i]
        for i in range(1, n - 1):
            work[i] = work[i] + bo * (psi[i - 1] + psi[i + 1])
        work[0] = work[0] + bo * psi[1]
        work[n - 1] = work[n - 1] + bo * psi[n - 2]
        # factor + forward sweep
        d = adiag[0]
        if abs(d) < 1e-300:
            return s, 0
        adiag[0] = 1.0 / d
        for i in range(1, n):
            li = ao * adiag[i - 1]
            d = adiag[i] - li * ao
            if abs(d) < 1e-300:
                return s, i
            adiag[i] = 1.0 / d
            work[i] = work[i] - li * work[i - 1]
        # back substitution + mask
        xv = work[n - 1] * adiag[n - 1]
        psi[n - 1] = xv * mask[n - 1]
        for i in range(n - 2, -1, -1):
            xv = (work[i] - ao * xv) * adiag[i]
            psi[i] = xv * mask[i]
    return -1, -1
