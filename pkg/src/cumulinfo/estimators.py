"""Empirical cumulative distributions, cumulative entropy and the fraction of
cumulative information for feature subsets.

Features enter only through their ranks, so every quantity here is invariant
under strictly increasing feature transforms.  The target enters through its
sorted distinct values and the gaps between them.

The residual fraction is averaged over a grid of joint thresholds ``x_j``.  At
each grid point the conditioning set ``S_j`` holds the samples lying jointly
below (forward) or above (reverse) every threshold, and the point contributes
``H(Y | S_j) / H(Y)``: the cumulative entropy of the target restricted to
``S_j`` relative to the marginal one.  Empty conditioning sets contribute 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Orientation",
    "Dataset",
    "SortedProfile",
    "GridSpec",
    "FractionPair",
    "DataError",
    "DegenerateError",
    "sorted_profile",
    "cumulative_entropy",
    "build_grid",
    "fraction_scores",
    "fraction",
]

# grid rows processed per block when building conditioning masks
_BLOCK = 2048


class DataError(ValueError):
    """Invalid input data or arguments."""


class DegenerateError(DataError):
    """Data that admits no meaningful score (e.g. a constant target)."""


class Orientation(str, enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


def _as_orientation(o) -> Orientation:
    return o if isinstance(o, Orientation) else Orientation(o)


def _clean(values, name="values") -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DataError("empty column")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"non-finite value in {name}")
    return arr


@dataclass(frozen=True)
class Dataset:
    """Immutable column table: named real features plus one target column."""

    columns: Mapping[str, np.ndarray]
    target_name: str
    n_rows: int = field(init=False)

    def __post_init__(self):
        cols = {}
        n = None
        for name, values in self.columns.items():
            name = str(name)
            if name in cols:
                raise DataError(f"duplicate column: {name}")
            arr = _clean(values, name).copy()
            arr.setflags(write=False)
            if n is None:
                n = arr.size
            elif arr.size != n:
                raise DataError(f"column {name} has {arr.size} rows, expected {n}")
            cols[name] = arr
        if self.target_name not in cols:
            raise DataError(f"target not found: {self.target_name}")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "n_rows", int(n))

    @classmethod
    def from_arrays(cls, target, features: Mapping[str, Sequence[float]], target_name="target"):
        cols = {target_name: target}
        for name in features:
            if name == target_name:
                raise DataError(f"duplicate column: {name}")
        cols.update(features)
        return cls(cols, target_name)

    @property
    def target(self) -> np.ndarray:
        return self.columns[self.target_name]

    @property
    def feature_names(self) -> list[str]:
        return [c for c in self.columns if c != self.target_name]

    def matrix(self, subset: Iterable[str]) -> np.ndarray:
        names = list(subset)
        for name in names:
            if name not in self.columns or name == self.target_name:
                raise DataError(f"no such column: {name}")
        return np.column_stack([self.columns[c] for c in names])

    def with_columns(self, extra: Mapping[str, Sequence[float]]) -> "Dataset":
        cols = dict(self.columns)
        for name, values in extra.items():
            if name in cols:
                raise DataError(f"duplicate column: {name}")
            cols[name] = values
        return Dataset(cols, self.target_name)

    def select(self, names: Iterable[str]) -> "Dataset":
        keep = [self.target_name] + [c for c in names if c != self.target_name]
        for c in keep:
            if c not in self.columns:
                raise DataError(f"no such column: {c}")
        return Dataset({c: self.columns[c] for c in keep}, self.target_name)


@dataclass(frozen=True)
class SortedProfile:
    distinct_values: np.ndarray
    cum_counts: np.ndarray


def sorted_profile(values, orientation=Orientation.FORWARD) -> SortedProfile:
    """Distinct values in increasing order with their cumulative counts.

    Forward counts the samples ``<=`` each value, reverse the samples ``>=``.
    """
    arr = _clean(values)
    distinct, counts = np.unique(arr, return_counts=True)
    if _as_orientation(orientation) is Orientation.FORWARD:
        cum = np.cumsum(counts)
    else:
        cum = np.cumsum(counts[::-1])[::-1]
    return SortedProfile(distinct, cum.astype(np.int64))


def _entropy_terms(values: np.ndarray):
    """Gaps between distinct sorted values and cumulative probabilities below
    each gap, in forward orientation."""
    distinct, counts = np.unique(values, return_counts=True)
    gaps = np.diff(distinct)
    p = np.cumsum(counts)[:-1] / values.size
    return gaps, p


def cumulative_entropy(values, orientation=Orientation.FORWARD) -> float:
    """Plug-in cumulative entropy ``-sum dz P log P`` of a sample."""
    arr = _clean(values)
    if _as_orientation(orientation) is Orientation.REVERSE:
        arr = -arr
    gaps, p = _entropy_terms(arr)
    if gaps.size == 0:
        return 0.0
    return float(-np.sum(gaps * p * np.log(p)))


@dataclass(frozen=True)
class GridSpec:
    """Joint threshold points, one column per feature of ``subset``."""

    strategy: str
    subset: tuple
    points: np.ndarray

    @property
    def m(self) -> int:
        return int(self.points.shape[0])


def _check_strategy(strategy: str) -> str:
    if strategy not in ("full", "sample"):
        raise DataError(f"unknown grid strategy: {strategy}")
    return strategy


def _canonical(dataset: Dataset, subset) -> tuple:
    if isinstance(subset, str):
        subset = [subset]
    names = tuple(sorted(set(subset)))
    if not names:
        raise DataError("empty feature subset")
    for name in names:
        if name not in dataset.columns or name == dataset.target_name:
            raise DataError(f"no such column: {name}")
    return names


def build_grid(dataset: Dataset, subset, strategy="sample") -> GridSpec:
    names = _canonical(dataset, subset)
    _check_strategy(strategy)
    X = dataset.matrix(names)
    if strategy == "sample" or X.shape[1] == 1:
        points = np.unique(X, axis=0)
    else:
        axes = [np.unique(X[:, f]) for f in range(X.shape[1])]
        points = np.array(list(itertools.product(*axes)), dtype=np.float64)
    return GridSpec(strategy, names, points)


@dataclass(frozen=True)
class FractionPair:
    d_forward: float
    d_reverse: float


def _target_layout(y: np.ndarray):
    order = np.argsort(y, kind="stable")
    ys = y[order]
    last = np.r_[ys[1:] != ys[:-1], True]
    gaps = np.diff(ys[last])
    return order, last, gaps


def _residual(y: np.ndarray, X: np.ndarray, P: np.ndarray) -> float:
    """Mean residual ratio over grid points (forward orientation).

    ``X`` holds per-sample ranks and ``P`` grid points in the same rank scale.
    """
    n = y.size
    order, last, gaps = _target_layout(y)
    if gaps.size == 0:
        raise DegenerateError("degenerate target: cumulative entropy is zero")
    # same arithmetic as the per-point terms so a full conditioning set
    # reproduces H exactly
    py = (np.nonzero(last)[0] + 1)[:-1] / n
    H = -((py * np.log(py)) @ gaps)
    Xs = X[order]
    total = 0.0
    for start in range(0, P.shape[0], _BLOCK):
        block = P[start:start + _BLOCK]
        M = np.all(Xs[None, :, :] <= block[:, None, :], axis=2)
        C = np.cumsum(M, axis=1, dtype=np.int64)
        b = C[:, -1]
        Cl = C[:, last][:, :-1]
        with np.errstate(divide="ignore", invalid="ignore"):
            q = Cl / np.maximum(b, 1)[:, None]
            t = np.where(Cl > 0, q * np.log(np.where(Cl > 0, q, 1.0)), 0.0)
        h = -(t @ gaps)
        ratio = np.where(b > 0, h / H, 1.0)
        total += float(np.sum(ratio))
    return total / P.shape[0]


def _ranks(X: np.ndarray, P: np.ndarray):
    """Map samples and grid points to integer ranks per feature."""
    Xr = np.empty(X.shape, dtype=np.int64)
    Pr = np.empty(P.shape, dtype=np.int64)
    for f in range(X.shape[1]):
        u = np.unique(X[:, f])
        Xr[:, f] = np.searchsorted(u, X[:, f])
        Pr[:, f] = np.searchsorted(u, P[:, f])
    return Xr, Pr


def fraction(y, X, points=None, orientation=Orientation.FORWARD, strategy="sample") -> float:
    """Fraction of cumulative information for raw arrays.

    ``X`` has shape ``(n, d)``; ``points`` defaults to the grid implied by
    ``strategy``.
    """
    y = _clean(y, "target")
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if points is None:
        if strategy == "sample" or X.shape[1] == 1:
            points = np.unique(X, axis=0)
        else:
            axes = [np.unique(X[:, f]) for f in range(X.shape[1])]
            points = np.array(list(itertools.product(*axes)), dtype=np.float64)
    Xr, Pr = _ranks(X, np.asarray(points, dtype=np.float64))
    if _as_orientation(orientation) is Orientation.REVERSE:
        y, Xr, Pr = -y, -Xr, -Pr
    return 1.0 - _residual(y, Xr, Pr)


def fraction_scores(dataset: Dataset, subset, grid: GridSpec | None = None) -> FractionPair:
    """Forward and reverse fraction of cumulative information of ``subset``."""
    names = _canonical(dataset, subset)
    if grid is None:
        grid = build_grid(dataset, names)
    elif tuple(grid.subset) != names:
        raise DataError("grid does not match subset")
    X = dataset.matrix(names)
    y = dataset.target
    return FractionPair(
        fraction(y, X, grid.points, Orientation.FORWARD),
        fraction(y, X, grid.points, Orientation.REVERSE),
    )
