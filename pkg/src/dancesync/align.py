"""Time-series alignment: dynamic time warping and barycenter averaging.

Series are one-dimensional float arrays (joint angles in degrees, heights in
normalized length units). The local cost between two samples is the absolute
difference, so a DTW distance carries the same unit as its inputs. Warping
paths use 0-based ``(i, j)`` index pairs from ``(0, 0)`` to ``(n-1, m-1)``.

All functions are pure; results are safe to share between threads.
"""

import functools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numba
import numpy as np

from .errors import (
    EmptyInputSetError,
    EmptySeriesError,
    NonFiniteSampleError,
    SizeLimitExceededError,
)

BRUTE_FORCE_MAX_LENGTH = 8


def as_series(values: Union[Sequence[float], np.ndarray]) -> np.ndarray:
    """Validate and convert one series to a float64 array.

    Raises EmptySeriesError for zero-length input and NonFiniteSampleError
    if any sample is NaN or infinite.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d series, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptySeriesError("series must contain at least one sample")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise NonFiniteSampleError(f"non-finite sample at index {bad}")
    return arr


def local_distance(x: float, y: float) -> float:
    """Local cost between two scalar samples: absolute difference."""
    return abs(x - y)


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of one DTW alignment."""

    distance: float
    path: tuple  # ((i, j), ...) 0-based, monotone, contiguous
    matrix: Optional[np.ndarray] = None  # cumulative cost, kept on request


@dataclass(frozen=True)
class Barycenter:
    """Representative series minimizing the summed DTW distance to its inputs."""

    series: np.ndarray
    iterations: int
    objective_trace: tuple  # summed DTW distance after each accepted update


@numba.njit(cache=True)
def _cumulative_cost(x, y):  # pragma: no cover - exercised through dtw()
    n = x.shape[0]
    m = y.shape[0]
    d = np.empty((n, m), dtype=np.float64)
    d[0, 0] = abs(x[0] - y[0])
    for i in range(1, n):
        d[i, 0] = d[i - 1, 0] + abs(x[i] - y[0])
    for j in range(1, m):
        d[0, j] = d[0, j - 1] + abs(x[0] - y[j])
    for i in range(1, n):
        for j in range(1, m):
            best = d[i - 1, j - 1]
            if d[i - 1, j] < best:
                best = d[i - 1, j]
            if d[i, j - 1] < best:
                best = d[i, j - 1]
            d[i, j] = abs(x[i] - y[j]) + best
    return d


def _backtrack(d: np.ndarray) -> tuple:
    # Ties prefer the diagonal, then (i-1, j), then (i, j-1); the distance is
    # unaffected, only which optimal path gets reported.
    i = d.shape[0] - 1
    j = d.shape[1] - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag = d[i - 1, j - 1]
            up = d[i - 1, j]
            left = d[i, j - 1]
            if diag <= up and diag <= left:
                i -= 1
                j -= 1
            elif up <= left:
                i -= 1
            else:
                j -= 1
        path.append((i, j))
    path.reverse()
    return tuple(path)


def dtw(
    x: Union[Sequence[float], np.ndarray],
    y: Union[Sequence[float], np.ndarray],
    keep_matrix: bool = False,
) -> AlignmentResult:
    """Align two series by dynamic time warping.

    Fills the cumulative cost matrix ``D`` with
    ``D[i, j] = |x[i] - y[j]| + min(D[i-1, j], D[i, j-1], D[i-1, j-1])``
    (running sums along the first row and column) and backtracks one optimal
    monotone, contiguous warping path.

    Parameters
    ----------
    x, y : sequence of float
        Series to align; each must be non-empty and finite.
    keep_matrix : bool
        Retain the cumulative cost matrix on the result.

    Returns
    -------
    AlignmentResult
        ``distance`` is the cumulative cost of the optimal path (equal to the
        bottom-right matrix entry), ``path`` one optimal warping path.
    """
    xs = as_series(x)
    ys = as_series(y)
    d = _cumulative_cost(xs, ys)
    path = _backtrack(d)
    return AlignmentResult(
        distance=float(d[-1, -1]),
        path=path,
        matrix=d if keep_matrix else None,
    )


def dtw_distance(x, y) -> float:
    """DTW distance only, skipping path backtracking."""
    return float(_cumulative_cost(as_series(x), as_series(y))[-1, -1])


@functools.lru_cache(maxsize=None)
def enumerate_warping_paths(n: int, m: int) -> tuple:
    """All monotone contiguous index paths from (0, 0) to (n-1, m-1).

    Grows exponentially; intended for small test grids only.
    """
    if n < 1 or m < 1:
        raise ValueError("grid sides must be >= 1")
    if n == 1 and m == 1:
        return (((0, 0),),)
    paths = []
    if n > 1:
        paths.extend(p + ((n - 1, m - 1),) for p in enumerate_warping_paths(n - 1, m))
    if m > 1:
        paths.extend(p + ((n - 1, m - 1),) for p in enumerate_warping_paths(n, m - 1))
    if n > 1 and m > 1:
        paths.extend(
            p + ((n - 1, m - 1),) for p in enumerate_warping_paths(n - 1, m - 1)
        )
    return tuple(paths)


def dtw_brute_force(x, y) -> float:
    """DTW distance by explicit enumeration of every warping path.

    Independent of the dynamic-programming route; used as a test oracle.
    Raises SizeLimitExceededError when either series is longer than
    BRUTE_FORCE_MAX_LENGTH.
    """
    xs = as_series(x)
    ys = as_series(y)
    if xs.size > BRUTE_FORCE_MAX_LENGTH or ys.size > BRUTE_FORCE_MAX_LENGTH:
        raise SizeLimitExceededError(
            f"brute force limited to length {BRUTE_FORCE_MAX_LENGTH}, "
            f"got {xs.size} and {ys.size}"
        )
    best = math.inf
    for path in enumerate_warping_paths(xs.size, ys.size):
        cost = 0.0
        for i, j in path:
            cost += abs(xs[i] - ys[j])
        if cost < best:
            best = cost
    return best


def _mean_update(center: np.ndarray, series: list) -> np.ndarray:
    sums = np.zeros(center.size)
    counts = np.zeros(center.size, dtype=np.int64)
    for s in series:
        d = _cumulative_cost(center, s)
        for i, j in _backtrack(d):
            sums[i] += s[j]
            counts[i] += 1
    # Path contiguity guarantees every center index receives a sample.
    assert counts.min() >= 1
    return sums / counts


def _objective(center: np.ndarray, series: list) -> float:
    total = 0.0
    for s in series:
        total += float(_cumulative_cost(center, s)[-1, -1])
    return total


def dba(
    inputs: Sequence[Union[Sequence[float], np.ndarray]],
    init: Union[str, int] = "medoid",
    max_iter: int = 30,
    tol: float = 1e-6,
) -> Barycenter:
    """Compute a DTW barycenter by iterated alignment and averaging.

    Starting from an initial center, each pass aligns every input to the
    center by DTW and replaces each center sample with the mean of all input
    samples its index was matched to. A candidate center is adopted unless it
    raises the summed DTW objective, so the reported objective trace is
    non-increasing; iteration stops once the improvement drops below ``tol``
    or after ``max_iter`` passes.

    Parameters
    ----------
    inputs : sequence of series
        Non-empty collection of non-empty series.
    init : "medoid" or int
        "medoid" starts from the input with the smallest summed DTW distance
        to the others (deterministic, seed-free); an integer picks that input.
    max_iter : int
        Maximum number of update passes.
    tol : float
        Absolute objective improvement below which iteration stops.
    """
    series = [as_series(s) for s in inputs]
    if not series:
        raise EmptyInputSetError("barycenter requires at least one input series")

    if init == "medoid":
        idx = _medoid_index(series)
    elif isinstance(init, int):
        if not 0 <= init < len(series):
            raise ValueError(f"init index {init} out of range")
        idx = init
    else:
        raise ValueError(f"unknown init rule {init!r}")

    center = series[idx].copy()
    objective = _objective(center, series)
    trace = [objective]
    iterations = 0
    for _ in range(max_iter):
        candidate = _mean_update(center, series)
        candidate_objective = _objective(candidate, series)
        improvement = objective - candidate_objective
        if candidate_objective <= objective:
            center = candidate
            objective = candidate_objective
            trace.append(objective)
            iterations += 1
        if improvement < tol:
            break
    return Barycenter(
        series=center, iterations=iterations, objective_trace=tuple(trace)
    )


def _medoid_index(series: list) -> int:
    n = len(series)
    if n == 1:
        return 0
    totals = np.zeros(n)
    for a in range(n):
        for b in range(a + 1, n):
            dist = float(_cumulative_cost(series[a], series[b])[-1, -1])
            totals[a] += dist
            totals[b] += dist
    return int(np.argmin(totals))
