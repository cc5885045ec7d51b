"""Expected fraction of cumulative information under independent permutation
of every feature.

Under a random permutation each conditioning set is a uniformly random subset
of the samples whose size follows a hypergeometric law, so the expectation
splits into two independent pieces:

* ``rho[s]``: expected residual ratio of a uniform random ``s``-subset of the
  target, which depends only on the target;
* ``Q[s]``: probability that a grid point's conditioning set has ``s``
  members, which depends only on the multiset of cumulative counts of each
  feature.

``D0 = 1 - sum_s Q[s] rho[s]``.  Both pieces are cached, so scoring many
subsets over the same target costs a few matrix-vector products each.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .estimators import (
    DataError,
    Dataset,
    DegenerateError,
    GridSpec,
    Orientation,
    _as_orientation,
    _canonical,
    _check_strategy,
    build_grid,
    fraction,
)

__all__ = [
    "ContingencyLayout",
    "BaselineEstimate",
    "hypergeometric_weight",
    "expected_gap",
    "contingency_layout",
    "expected_fraction",
    "expected_fraction_mc",
    "residual_profile",
    "size_distribution",
    "stream",
]


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Philox generator for the stream identified by ``(seed, *keys)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, keys)])))


@lru_cache(maxsize=8)
def _log_factorial(n: int) -> np.ndarray:
    return gammaln(np.arange(n + 2, dtype=np.float64) + 1.0)


def _log_comb(lf, a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    ok = (b >= 0) & (b <= a) & (a >= 0)
    aa = np.where(ok, a, 0)
    bb = np.where(ok, b, 0)
    return np.where(ok, lf[aa] - lf[bb] - lf[aa - bb], -np.inf)


def hypergeometric_weight(n_ij: int, i: int, b_j: int, r: int) -> float:
    """Probability that a column of ``b_j`` members shares ``n_ij`` with the
    first ``i`` of ``r`` rows, given that both contain a common element.

    ``C(r-i, b_j-n_ij) C(i-1, n_ij-1) / C(r-1, b_j-1)``
    """
    n_ij, i, b_j, r = int(n_ij), int(i), int(b_j), int(r)
    if not (1 <= i <= r and 1 <= b_j <= r):
        raise DataError("infeasible cell count")
    if n_ij < max(0, i + b_j - r) or n_ij > min(i, b_j):
        raise DataError("infeasible cell count")
    lf = _log_factorial(r)
    lw = _log_comb(lf, r - i, b_j - n_ij) + _log_comb(lf, i - 1, n_ij - 1) - _log_comb(lf, r - 1, b_j - 1)
    return float(np.exp(lw))


@dataclass(frozen=True)
class ContingencyLayout:
    """Cumulative contingency table margins: target levels by grid columns."""

    r: int
    c: int
    n: int
    row_marginals: np.ndarray
    column_marginals: np.ndarray
    sorted_target_values: np.ndarray


def contingency_layout(dataset: Dataset, subset, grid: GridSpec | None = None,
                       orientation=Orientation.FORWARD) -> ContingencyLayout:
    names = _canonical(dataset, subset)
    if grid is None:
        grid = build_grid(dataset, names)
    rev = _as_orientation(orientation) is Orientation.REVERSE
    y = -dataset.target if rev else dataset.target
    X = dataset.matrix(names)
    P = grid.points
    if rev:
        X, P = -X, -P
    levels, counts = np.unique(y, return_counts=True)
    cols = np.array([np.count_nonzero(np.all(X <= p, axis=1)) for p in P], dtype=np.int64)
    return ContingencyLayout(levels.size, P.shape[0], y.size, counts.astype(np.int64), cols, levels)


def expected_gap(i: int, b_j: int, layout: ContingencyLayout) -> float:
    """Expected distance from target level ``i`` (1-based) to the next level
    occupied by a column of ``b_j`` members."""
    r, n = layout.r, layout.n
    y = layout.sorted_target_values
    if i >= r:
        raise DataError("no gap beyond last value")
    if i < 1:
        raise DataError("row index must be >= 1")
    gaps = y[i:] - y[i - 1]
    if b_j <= 1:
        return float(np.mean(gaps))
    k_max = min(n - b_j + 1, r - i)
    if k_max < 1:
        return float(gaps[0])
    k = np.arange(1, k_max + 1)
    lf = _log_factorial(max(n, r))
    lw = _log_comb(lf, r - k - 1, b_j - 2)
    if not np.any(np.isfinite(lw)):
        return float(gaps[0])
    w = np.exp(lw - lw.max())
    return float(np.sum(w * gaps[:k_max]) / np.sum(w))


@dataclass(frozen=True)
class BaselineEstimate:
    value: float
    stderr: float
    method: str
    permutations: int


@lru_cache(maxsize=64)
def _residual_profile_cached(key: bytes, n: int) -> np.ndarray:
    y = np.frombuffer(key, dtype=np.float64)
    levels, counts = np.unique(y, return_counts=True)
    gaps = np.diff(levels)
    if gaps.size == 0:
        raise DegenerateError("degenerate target: cumulative entropy is zero")
    K = np.cumsum(counts)[:-1]
    p = K / n
    H = -np.sum(gaps * p * np.log(p))
    rho = np.ones(n + 1)
    for s, P in _hypergeometric_sweep(n, K, range(1, n + 1)):
        q = np.arange(1, s + 1) / s
        rho[s] = -(gaps @ (P[:, 1:s + 1] @ (q * np.log(q)))) / H
    rho[n] = 1.0
    return rho


def residual_profile(y, orientation=Orientation.FORWARD) -> np.ndarray:
    """``rho[s]``: expected residual ratio of a random ``s``-subset of ``y``.

    ``rho[0] = 1`` (empty conditioning set) and ``rho[n] = 1``.
    """
    y = np.asarray(y, dtype=np.float64)
    if _as_orientation(orientation) is Orientation.REVERSE:
        y = -y
    return _residual_profile_cached(np.ascontiguousarray(y).tobytes(), y.size)


def _point_counts(x: np.ndarray, per_sample: bool) -> np.ndarray:
    """Cumulative counts ``#{x <= v}`` at each distinct value or each sample."""
    s = np.sort(x)
    v = x if per_sample else np.unique(x)
    return np.searchsorted(s, v, side="right")


def _hypergeometric_sweep(N: int, K: np.ndarray, draws):
    """Yield ``(c, P)`` where ``P[i, k]`` is the probability of ``k`` successes
    in ``c`` draws without replacement from ``N`` items with ``K[i]``
    successes, for each requested ``c`` in increasing order."""
    wanted = sorted(set(int(c) for c in draws))
    P = np.zeros((K.size, N + 1))
    P[:, 0] = 1.0
    k = np.arange(N + 1)
    c = 0
    for target in wanted:
        while c < target:
            kk = k[None, :c + 1]
            up = P[:, :c + 1] * ((K[:, None] - kk) / (N - c))
            P[:, :c + 1] *= (N - K[:, None] - c + kk) / (N - c)
            P[:, 1:c + 2] += up
            c += 1
        yield target, P


@lru_cache(maxsize=256)
def _kernel(n: int, counts: tuple, weights: tuple, self_containing: bool) -> np.ndarray:
    """Transition matrix ``K[t, s]`` for intersecting a size-``t`` set with an
    independent uniform set whose size is drawn from ``counts``.

    With ``self_containing`` both sets share one fixed element, so
    ``s - 1 ~ HG(n - 1, t - 1, c - 1)``.
    """
    w = dict(zip(counts, weights))
    K = np.zeros((n + 1, n + 1))
    if self_containing:
        succ = np.arange(n)
        for c, P in _hypergeometric_sweep(n - 1, succ, [c - 1 for c in counts]):
            K[1:, 1:] += w[c + 1] * P
        K[0, 0] = 1.0
    else:
        succ = np.arange(n + 1)
        for c, P in _hypergeometric_sweep(n, succ, counts):
            K += w[c] * P
    return K


def _histogram(counts: np.ndarray, n: int) -> np.ndarray:
    return np.bincount(counts, minlength=n + 1).astype(np.float64) / counts.size


def size_distribution(X, strategy="sample") -> np.ndarray:
    """Distribution over grid points of conditioning-set size under
    independent permutation of the columns of ``X`` (forward orientation)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    n, d = X.shape
    per_sample = strategy == "sample" and d > 1
    Q = _histogram(_point_counts(X[:, 0], per_sample), n)
    for f in range(1, d):
        c, w = np.unique(_point_counts(X[:, f], per_sample), return_counts=True)
        K = _kernel(n, tuple(int(v) for v in c), tuple(float(v) for v in w / w.sum()), per_sample)
        Q = Q @ K
    return Q


def expected_fraction(dataset: Dataset, subset, grid: GridSpec | str | None = None,
                      orientation=Orientation.FORWARD) -> BaselineEstimate:
    """Exact expectation of the fraction score over independent permutations
    of every feature in ``subset``.

    Exact whenever the grid does not depend on the permutation: always for
    the full grid and single features, and for the sample grid when the
    joint feature rows are distinct.
    """
    names = _canonical(dataset, subset)
    if grid is None:
        strategy = "sample"
    elif isinstance(grid, str):
        strategy = _check_strategy(grid)
    else:
        strategy = grid.strategy
    rev = _as_orientation(orientation) is Orientation.REVERSE
    X = dataset.matrix(names)
    if rev:
        X = -X
    rho = residual_profile(dataset.target, orientation)
    Q = size_distribution(X, strategy)
    value = float(1.0 - Q @ rho)
    return BaselineEstimate(value, 0.0, "closed_form", 0)


def _permuted_fraction(y, X, strategy, orientation, seed, index):
    rng = stream(seed, index)
    Xp = np.column_stack([rng.permutation(X[:, f]) for f in range(X.shape[1])])
    return fraction(y, Xp, None, orientation, strategy)


def expected_fraction_mc(dataset: Dataset, subset, grid_strategy="sample",
                         orientation=Orientation.FORWARD, permutations=1000, seed=0,
                         workers: int = 1) -> BaselineEstimate:
    """Monte Carlo permutation estimate of the expected fraction score.

    Permutation ``p`` draws from its own stream ``(seed, p)``, so the result
    does not depend on ``workers``.
    """
    if permutations < 1:
        raise DataError("permutations must be >= 1")
    _check_strategy(grid_strategy)
    names = _canonical(dataset, subset)
    X = dataset.matrix(names)
    y = dataset.target
    if np.unique(y).size < 2:
        raise DegenerateError("degenerate target: cumulative entropy is zero")

    def run(p):
        return _permuted_fraction(y, X, grid_strategy, orientation, seed, p)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            vals = np.fromiter(pool.map(run, range(permutations)), dtype=np.float64, count=permutations)
    else:
        vals = np.fromiter(map(run, range(permutations)), dtype=np.float64, count=permutations)
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / np.sqrt(permutations)) if permutations > 1 else 0.0
    if np.ptp(vals) == 0:
        se = 0.0
    return BaselineEstimate(mean, se, "monte_carlo", int(permutations))
