"""Seeded synthetic data: deterministic ramp families, named distributions,
the Friedman #1 regression problem, the bivariate normal search suite, and a
statistical power harness.

Every stochastic draw comes from numpy's Philox counter-based generator keyed
by ``SeedSequence([seed, *stream])`` (see ``baseline.stream``).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .baseline import stream
from .estimators import DataError, Dataset
from .tcmi import score_subset

__all__ = [
    "KINDS",
    "GeneratorSpec",
    "PowerReport",
    "generate",
    "friedman1",
    "bivariate_normal_suite",
    "power_analysis",
    "independent_uniform_builder",
    "linear_builder",
]

KINDS = (
    "linear", "exponential", "step", "sawtooth", "uniform_random", "constant", "normal",
    "logistic", "triangular", "laplace", "rayleigh", "weibull", "exponential_dist", "poisson",
)

DISTRACTORS = ("normal", "exponential_dist", "logistic", "triangular", "uniform_random",
               "laplace", "rayleigh", "weibull")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    param: int = 0
    seed: int = 0


def _ramp(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.float64) / (n - 1)


def generate(spec: GeneratorSpec) -> np.ndarray:
    """Draw or construct the column described by ``spec``."""
    kind, n = spec.kind, int(spec.n)
    if kind not in KINDS:
        raise DataError(f"unknown generator: {kind}")
    if kind == "constant":
        if n < 1:
            raise DataError("n must be >= 1")
        return np.zeros(n)
    if n < 2:
        raise DataError("n must be >= 2")
    i = np.arange(n)
    if kind == "linear":
        return _ramp(n)
    if kind == "exponential":
        e = np.exp(_ramp(n))
        return (e - e[0]) / (e[-1] - e[0])
    if kind == "step":
        if spec.param < 2:
            raise DataError("invalid discretization parameter")
        r = spec.param
        return (i // r) * r / (n - 1)
    if kind == "sawtooth":
        if spec.param < 2:
            raise DataError("invalid discretization parameter")
        L = spec.param
        return (i % L) / (L - 1)
    rng = stream(spec.seed, KINDS.index(kind))
    if kind == "uniform_random":
        return rng.uniform(0.0, 1.0, n)
    if kind == "normal":
        return rng.standard_normal(n)
    if kind == "logistic":
        return rng.logistic(0.0, 1.0, n)
    if kind == "triangular":
        return rng.triangular(-1.0, 0.0, 1.0, n)
    if kind == "laplace":
        return rng.laplace(0.0, 1.0, n)
    if kind == "rayleigh":
        return rng.rayleigh(1.0, n)
    if kind == "weibull":
        return rng.weibull(1.5, n)
    if kind == "exponential_dist":
        return rng.exponential(1.0, n)
    return rng.poisson(1.0, n).astype(np.float64)


def friedman_response(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    return (10.0 * np.sin(np.pi * X[:, 0] * X[:, 1]) + 20.0 * (X[:, 2] - 0.5) ** 2
            + 10.0 * X[:, 3] + 5.0 * X[:, 4])


def friedman1(n: int, seed: int = 0, include_correlated: bool = False,
              epsilon_sigma: float = 1.0) -> Dataset:
    """Friedman #1: ten uniform features of which the first five matter.

    With ``include_correlated`` four near-copies of X1..X4 are appended.
    """
    if n < 1:
        raise DataError("n must be >= 1")
    rng = stream(seed, 101)
    X = rng.uniform(0.0, 1.0, (n, 10))
    y = friedman_response(X) + epsilon_sigma * rng.standard_normal(n)
    cols = {f"X{j + 1}": X[:, j] for j in range(10)}
    if include_correlated:
        for j in range(4):
            cols[f"X{j + 11}"] = X[:, j] + rng.normal(0.0, 0.01, n)
    return Dataset.from_arrays(y, cols, target_name="Y")


def bivariate_normal_suite(n: int, seed: int = 0) -> Dataset:
    """Features ``x, y`` from a correlated bivariate normal plus eight
    distractors; the target is the joint density at each sample."""
    if n < 2:
        raise DataError("n must be >= 2")
    cov = np.array([[1.0, 0.5], [0.5, 1.0]])
    rng = stream(seed, 202)
    xy = rng.multivariate_normal(np.zeros(2), cov, n, method="cholesky")
    inv = np.linalg.inv(cov)
    maha = np.einsum("ij,jk,ik->i", xy, inv, xy)
    density = np.exp(-0.5 * maha) / (2.0 * np.pi * np.sqrt(np.linalg.det(cov)))
    cols = {"x": xy[:, 0], "y": xy[:, 1]}
    for k, kind in enumerate(DISTRACTORS):
        name = "exponential" if kind == "exponential_dist" else ("uniform" if kind == "uniform_random" else kind)
        cols[name] = generate(GeneratorSpec(kind, n, seed=int(stream(seed, 203, k).integers(2**31))))
    return Dataset.from_arrays(density, cols, target_name="density")


@dataclass(frozen=True)
class PowerReport:
    sigma_levels: tuple
    power: tuple
    mean_score: tuple
    independence_percentile: float
    gamma: float

    @property
    def contrast(self) -> tuple:
        return tuple(m - self.independence_percentile for m in self.mean_score)


Builder = Callable[[np.random.Generator], Dataset]


def linear_builder(n: int) -> Builder:
    """Target equal to a uniform feature ``x``: the strongest dependence."""
    def build(rng):
        x = rng.uniform(0.0, 1.0, n)
        return Dataset.from_arrays(x.copy(), {"x": x}, target_name="t")
    return build


def independent_uniform_builder(n: int, d: int) -> Builder:
    """Target and ``d`` features all mutually independent uniforms."""
    def build(rng):
        return Dataset.from_arrays(rng.uniform(0.0, 1.0, n),
                                   {f"x{j + 1}": rng.uniform(0.0, 1.0, n) for j in range(d)},
                                   target_name="t")
    return build


def power_analysis(builder: Builder, subset: Sequence[str], sigma_levels=(0.0, 0.2, 0.4, 0.6, 0.8, 1.0),
                   gamma: float = 0.95, repeats: int = 500, seed: int = 0,
                   grid_strategy: str = "sample", workers: int = 1) -> PowerReport:
    """Probability that the assessment score under target noise ``sigma``
    exceeds the ``gamma`` percentile of scores on independent data.

    Repeat ``r`` at noise level ``k`` draws from stream ``(seed, k, r)``, so
    results do not depend on ``workers``.
    """
    if repeats < 50:
        raise DataError("repeats must be >= 50")
    if not 0.0 < gamma < 1.0:
        raise DataError("gamma must lie in (0, 1)")
    subset = tuple(subset)
    sigma_levels = tuple(float(s) for s in sigma_levels)
    probe = builder(stream(seed, 0, 0))
    n, d = probe.n_rows, len(subset)
    null_builder = independent_uniform_builder(n, d)
    null_subset = tuple(f"x{j + 1}" for j in range(d))

    def null_score(r):
        ds = null_builder(stream(seed, 1 << 20, r))
        return score_subset(ds, null_subset, grid_strategy).assessment_score

    def noisy_score(job):
        k, r = job
        rng = stream(seed, k, r)
        ds = builder(rng)
        if sigma_levels[k] > 0.0:
            ds = _replace_target(ds, ds.target + sigma_levels[k] * rng.standard_normal(ds.n_rows))
        return score_subset(ds, subset, grid_strategy).assessment_score

    jobs = [(k, r) for k in range(len(sigma_levels)) for r in range(repeats)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            null = np.array(list(pool.map(null_score, range(repeats))))
            scores = np.array(list(pool.map(noisy_score, jobs)))
    else:
        null = np.array([null_score(r) for r in range(repeats)])
        scores = np.array([noisy_score(j) for j in jobs])
    scores = scores.reshape(len(sigma_levels), repeats)
    threshold = float(np.quantile(null, gamma))
    power = tuple(float(np.mean(row > threshold)) for row in scores)
    mean = tuple(float(np.mean(row)) for row in scores)
    return PowerReport(sigma_levels, power, mean, threshold, gamma)


def _replace_target(ds: Dataset, y: np.ndarray) -> Dataset:
    cols = dict(ds.columns)
    cols[ds.target_name] = y
    return Dataset(cols, ds.target_name)
