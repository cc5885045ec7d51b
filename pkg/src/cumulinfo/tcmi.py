"""Baseline-adjusted scores and the two aggregates over orientations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .baseline import expected_fraction, stream
from .estimators import Dataset, Orientation, _canonical, build_grid, fraction_scores

__all__ = ["ScorePair", "SubsetScore", "score_subset", "rank_table_ordering", "SHUFFLED_SUFFIX"]

SHUFFLED_SUFFIX = "~shuffled"


@dataclass(frozen=True)
class ScorePair:
    d_forward: float
    d_reverse: float
    baseline_forward: float
    baseline_reverse: float

    @property
    def adjusted_forward(self) -> float:
        return self.d_forward - self.baseline_forward

    @property
    def adjusted_reverse(self) -> float:
        return self.d_reverse - self.baseline_reverse


@dataclass(frozen=True)
class SubsetScore:
    subset: tuple
    selection_score: float
    assessment_score: float
    pair: ScorePair
    n: int

    def as_record(self) -> dict:
        return {
            "subset": list(self.subset),
            "selection_score": self.selection_score,
            "assessment_score": self.assessment_score,
            "d_forward": self.pair.d_forward,
            "d_reverse": self.pair.d_reverse,
            "baseline_forward": self.pair.baseline_forward,
            "baseline_reverse": self.pair.baseline_reverse,
        }


def _assemble(subset, pair: ScorePair, n: int) -> SubsetScore:
    selection = min(pair.adjusted_forward, pair.adjusted_reverse)
    assessment = 0.5 * (pair.d_forward + pair.d_reverse) - 0.5 * (pair.baseline_forward + pair.baseline_reverse)
    return SubsetScore(tuple(subset), float(selection), float(assessment), pair, n)


def _with_shuffled_copy(dataset: Dataset, name: str, seed: int):
    rng = stream(seed, 0x5eed)
    copy = name + SHUFFLED_SUFFIX
    return dataset.with_columns({copy: rng.permutation(dataset.columns[name])}), (name, copy)


def score_subset(dataset: Dataset, subset, grid_strategy="sample", shuffle_correction=False,
                 seed=0) -> SubsetScore:
    """Score a feature subset in both orientations.

    With ``shuffle_correction`` a single feature is scored together with a
    randomly permuted copy of itself, which lifts one-dimensional scores onto
    the same footing as two-dimensional ones.
    """
    names = _canonical(dataset, subset)
    work, scored = dataset, names
    if shuffle_correction and len(names) == 1:
        work, scored = _with_shuffled_copy(dataset, names[0], seed)
    grid = build_grid(work, scored, grid_strategy)
    d = fraction_scores(work, scored, grid)
    b_fwd = expected_fraction(work, scored, grid, Orientation.FORWARD).value
    b_rev = expected_fraction(work, scored, grid, Orientation.REVERSE).value
    return _assemble(names, ScorePair(d.d_forward, d.d_reverse, b_fwd, b_rev), dataset.n_rows)


def _order_key(score: SubsetScore):
    return (-score.selection_score, len(score.subset), tuple(sorted(score.subset)))


def rank_table_ordering(scores: Iterable[SubsetScore]) -> list[SubsetScore]:
    """Descending selection score; ties go to smaller, then lexicographically
    smaller subsets."""
    return sorted(scores, key=_order_key)
