"""Connection-point scans and velocity sweeps, plus the averaging procedure
that extracts the asymptotic reflectivity from the oscillating scan curve.

Every scan point is an independent job; a bounded process pool fans them out
and results are re-assembled in input order, so output is deterministic
regardless of scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ExtrapolationUnavailable


@dataclass
class ScanPoint:
    x0: float                   # meters (user-facing scans run in SI)
    value: object = None        # float (static) or SidebandReport (driven)
    error: str | None = None


@dataclass
class ReflectivityScan:
    points: list = field(default_factory=list)
    maxima_indices: list = field(default_factory=list)
    extrapolated: object = None


def find_local_maxima(values) -> list[int]:
    """Indices of strict interior maxima; a plateau counts once, at its left edge."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return []
    out = []
    i = 1
    while i < v.size - 1:
        if v[i] > v[i - 1]:
            j = i
            while j + 1 < v.size and v[j + 1] == v[i]:
                j += 1
            if j < v.size - 1 and v[i] > v[j + 1]:
                out.append(i)
            i = j + 1
        else:
            i += 1
    return out


def _interval_pairs(values, maxima):
    for a, b in zip(maxima[:-1], maxima[1:]):
        interior_min = float(np.min(values[a + 1: b]))
        yield float(values[a]), interior_min


def double_geometric_average(values, maxima_indices=None) -> float:
    """Asymptote of an oscillating positive series: geometric mean, over each
    pair of subsequent maxima, of (value at the maximum, smallest value
    strictly between the pair), then the geometric mean across intervals."""
    v = np.asarray(values, dtype=float)
    maxima = find_local_maxima(v) if maxima_indices is None else list(maxima_indices)
    if len(maxima) < 2:
        raise ExtrapolationUnavailable(
            f"need at least 2 maxima to average between, found {len(maxima)}"
        )
    logs = [0.5 * (math.log(hi) + math.log(lo)) for hi, lo in _interval_pairs(v, maxima)]
    return math.exp(sum(logs) / len(logs))


def arithmetic_average(values, maxima_indices=None) -> float:
    """Arithmetic-mean variant of the same construction, for sensitivity checks."""
    v = np.asarray(values, dtype=float)
    maxima = find_local_maxima(v) if maxima_indices is None else list(maxima_indices)
    if len(maxima) < 2:
        raise ExtrapolationUnavailable(
            f"need at least 2 maxima to average between, found {len(maxima)}"
        )
    means = [0.5 * (hi + lo) for hi, lo in _interval_pairs(v, maxima)]
    return sum(means) / len(means)


EXTRAPOLATION_STRATEGIES = {
    "double_geometric": double_geometric_average,
    "arithmetic": arithmetic_average,
}


def extrapolate(values, strategy: str = "double_geometric") -> float:
    return EXTRAPOLATION_STRATEGIES[strategy](values)


def run_jobs(worker, jobs, n_workers: int | None = None) -> list:
    """Map `worker` over `jobs` on a process pool; results keep input order.

    A failing job yields (index, None, message) instead of aborting the scan.
    """
    results: list = [None] * len(jobs)

    def pack(i, job):
        try:
            return i, worker(job), None
        except Exception as exc:  # propagate per point, keep the scan alive
            return i, None, f"{type(exc).__name__}: {exc}"

    if n_workers is None or n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            futs = [pool.submit(_pool_entry, worker, i, job)
                    for i, job in enumerate(jobs)]
            for fut in futs:
                i, value, err = fut.result()
                results[i] = (value, err)
    else:
        for i, job in enumerate(jobs):
            i, value, err = pack(i, job)
            results[i] = (value, err)
    return results


def _pool_entry(worker, i, job):
    try:
        return i, worker(job), None
    except Exception as exc:
        return i, None, f"{type(exc).__name__}: {exc}"
