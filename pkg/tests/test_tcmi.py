import numpy as np
import pytest
from hypothesis import given

from cumulinfo import Dataset, ScorePair, SubsetScore, rank_table_ordering, score_subset
from strategies import datasets


def _score(subset, s):
    return SubsetScore(tuple(subset), s, s, ScorePair(0, 0, 0, 0), 10)


def test_ranking_examples():
    a, b = _score(["a"], 0.5), _score(["b"], 0.7)
    assert [s.selection_score for s in rank_table_ordering([a, b])] == [0.7, 0.5]
    big, small = _score(["a", "b", "c"], 0.4), _score(["a", "b"], 0.4)
    assert rank_table_ordering([big, small])[0] is small
    ac, ab = _score(["a", "c"], 0.4), _score(["a", "b"], 0.4)
    assert rank_table_ordering([ac, ab])[0] is ab


def test_constant_feature_scores_exactly_zero():
    y = np.arange(200.0) / 199
    s = score_subset(Dataset.from_arrays(y, {"c": np.zeros(200)}), ["c"])
    assert s.assessment_score == 0.0 and s.selection_score == 0.0


@given(datasets())
def test_aggregates(ds):
    s = score_subset(ds, ds.feature_names)
    p = s.pair
    assert s.selection_score == min(p.d_forward - p.baseline_forward, p.d_reverse - p.baseline_reverse)
    assert s.assessment_score == pytest.approx(
        0.5 * (p.d_forward + p.d_reverse) - 0.5 * (p.baseline_forward + p.baseline_reverse), abs=1e-15)
    spread = abs(p.adjusted_forward - p.adjusted_reverse)
    assert s.selection_score <= s.assessment_score + 0.5 * spread + 1e-12
    assert -1.0 <= p.adjusted_forward <= 1.0 and -1.0 <= p.adjusted_reverse <= 1.0


@given(datasets())
def test_score_invariances(ds):
    names = ds.feature_names
    base = score_subset(ds, names)
    assert score_subset(ds, list(reversed(names))) == base
    cols = {k: (np.arctan(v) if k != ds.target_name else v) for k, v in ds.columns.items()}
    assert score_subset(Dataset(cols, ds.target_name), names) == base


def test_shuffle_correction_is_seeded():
    rng = np.random.default_rng(4)
    ds = Dataset.from_arrays(rng.uniform(size=40), {"x": rng.uniform(size=40)})
    a = score_subset(ds, ["x"], shuffle_correction=True, seed=3)
    assert a == score_subset(ds, ["x"], shuffle_correction=True, seed=3)
    assert a.subset == ("x",)
    assert a != score_subset(ds, ["x"])
