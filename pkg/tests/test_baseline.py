import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from cumulinfo import DataError, Dataset, DegenerateError, Orientation, expected_fraction, expected_fraction_mc
from cumulinfo.baseline import (
    contingency_layout,
    expected_gap,
    hypergeometric_weight,
    residual_profile,
    ContingencyLayout,
)
from strategies import datasets

FWD, REV = Orientation.FORWARD, Orientation.REVERSE


@pytest.mark.parametrize("args, expected", [
    ((1, 1, 1, 3), 1.0),
    ((1, 2, 2, 4), 2 / 3),
    ((2, 2, 2, 4), 1 / 3),
])
def test_hypergeometric_weight_examples(args, expected):
    assert hypergeometric_weight(*args) == pytest.approx(expected, abs=1e-12)


@given(st.integers(1, 60).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r), st.integers(1, r))))
def test_hypergeometric_weight_normalised(args):
    r, i, b = args
    lo, hi = max(0, i + b - r), min(i, b)
    total = sum(hypergeometric_weight(k, i, b, r) for k in range(lo, hi + 1))
    assert total == pytest.approx(1.0, abs=1e-12)


@given(st.integers(1, 25).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r), st.integers(1, r))))
def test_hypergeometric_weight_matches_binomials(args):
    r, i, b = args
    for k in range(max(1, i + b - r), min(i, b) + 1):
        ref = oracles.binom(r - i, b - k) * oracles.binom(i - 1, k - 1) / oracles.binom(r - 1, b - 1)
        assert hypergeometric_weight(k, i, b, r) == pytest.approx(ref, rel=1e-10)


def test_hypergeometric_weight_infeasible():
    with pytest.raises(DataError, match="infeasible cell count"):
        hypergeometric_weight(3, 2, 2, 4)
    with pytest.raises(DataError, match="infeasible cell count"):
        hypergeometric_weight(0, 3, 3, 4)


def _layout(y, b=None):
    y = np.asarray(y, dtype=float)
    return ContingencyLayout(y.size, 1, y.size, np.ones(y.size, int), np.array([b or y.size]), y)


def test_expected_gap_examples():
    assert expected_gap(1, 2, _layout([0, 1, 2, 3])) == pytest.approx(2.0)
    # all mass in one column: single adjacent gap
    assert expected_gap(2, 4, _layout([0, 1, 5, 6])) == pytest.approx(4.0)
    with pytest.raises(DataError, match="no gap beyond last value"):
        expected_gap(4, 2, _layout([0, 1, 2, 3]))


@given(st.lists(st.floats(-50, 50), min_size=2, max_size=20, unique=True), st.data())
def test_expected_gap_is_convex_combination(values, data):
    y = np.sort(np.asarray(values))
    r = y.size
    i = data.draw(st.integers(1, r - 1))
    b = data.draw(st.integers(1, r))
    g = expected_gap(i, b, _layout(y))
    assert y[i] - y[i - 1] - 1e-9 <= g <= y[-1] - y[i - 1] + 1e-9


def test_contingency_layout_margins():
    ds = Dataset.from_arrays([0.0, 1, 1, 3], {"a": [0.0, 1, 2, 3]})
    lay = contingency_layout(ds, ["a"])
    assert lay.r == 3 and lay.n == 4 and lay.c == 4
    assert lay.row_marginals.sum() == 4
    assert lay.column_marginals.tolist() == [1, 2, 3, 4]


def test_constant_feature_baseline_zero():
    ds = Dataset.from_arrays(np.arange(20.0), {"c": np.zeros(20)})
    assert expected_fraction(ds, ["c"], "sample", FWD).value == 0.0
    mc = expected_fraction_mc(ds, ["c"], "sample", FWD, permutations=20, seed=3)
    assert mc.value == 0.0 and mc.stderr == 0.0


def test_residual_profile_endpoints():
    rho = residual_profile(np.arange(12.0))
    assert rho[0] == 1.0 and rho[1] == 0.0 and rho[-1] == 1.0
    assert np.all(np.diff(rho[1:]) >= -1e-12)


def test_frozen_enumeration_values():
    # exact averages over all permutations, computed by the enumeration oracle
    ds = Dataset.from_arrays([0, 1, 2, 3, 4], {"x": [0, 1, 2, 3, 4]})
    assert expected_fraction(ds, ["x"], "sample", FWD).value == pytest.approx(0.3332237891223834, abs=1e-12)
    ds = Dataset.from_arrays([0.0, 1, 1, 3], {"a": [0.0, 1, 2, 3], "b": [1.0, 0, 3, 2]})
    assert expected_fraction(ds, ["a", "b"], "sample", FWD).value == pytest.approx(0.6290814928107893, abs=1e-12)
    assert expected_fraction(ds, ["a", "b"], "sample", REV).value == pytest.approx(0.6619301637603493, abs=1e-12)
    assert expected_fraction(ds, ["a", "b"], "full", FWD).value == pytest.approx(0.4999912276628861, abs=1e-12)
    assert expected_fraction(ds, ["a", "b"], "full", REV).value == pytest.approx(0.5300927344619474, abs=1e-12)


@given(datasets(min_n=3, max_n=5, max_d=2, ties=True), st.sampled_from(["sample", "full"]), st.booleans())
def test_closed_form_equals_enumeration(ds, strategy, reverse):
    names = ds.feature_names
    X = ds.matrix(names)
    if strategy == "sample" and len(names) > 1 and np.unique(X, axis=0).shape[0] < X.shape[0]:
        # joint ties make the sample grid depend on the permutation
        return
    rows = [tuple(r) for r in X]
    ref = oracles.exact_baseline(ds.target.tolist(), rows, reverse, strategy)
    got = expected_fraction(ds, names, strategy, REV if reverse else FWD).value
    assert got == pytest.approx(ref, abs=1e-12)


@given(datasets(min_n=4, max_n=30, min_d=2, max_d=4, ties=False), st.booleans())
def test_baseline_monotone_sample_grid(ds, reverse):
    o = REV if reverse else FWD
    names = ds.feature_names
    for k in range(1, len(names)):
        assert expected_fraction(ds, names[:k + 1], "sample", o).value >= \
            expected_fraction(ds, names[:k], "sample", o).value - 1e-9


@given(datasets(), st.integers(0, 2**32 - 1))
def test_baseline_invariant_under_increasing_transforms(ds, seed):
    names = ds.feature_names
    cols = {k: (np.exp(v) if k != ds.target_name else v) for k, v in ds.columns.items()}
    other = Dataset(cols, ds.target_name)
    for o in (FWD, REV):
        assert expected_fraction(ds, names, "sample", o) == expected_fraction(other, names, "sample", o)


def test_mc_is_seed_deterministic_and_worker_independent():
    rng = np.random.default_rng(1)
    ds = Dataset.from_arrays(rng.normal(size=25), {"a": rng.uniform(size=25), "b": rng.uniform(size=25)})
    a = expected_fraction_mc(ds, ["a", "b"], "sample", FWD, permutations=64, seed=11)
    b = expected_fraction_mc(ds, ["a", "b"], "sample", FWD, permutations=64, seed=11, workers=4)
    assert a == b
    assert a.method == "monte_carlo" and a.permutations == 64 and a.stderr > 0


def test_mc_agrees_with_closed_form_linear():
    y = np.arange(50.0) / 49
    ds = Dataset.from_arrays(y, {"x": y})
    cf = expected_fraction(ds, ["x"], "sample", FWD)
    assert cf.stderr == 0.0 and cf.method == "closed_form"
    mc = expected_fraction_mc(ds, ["x"], "sample", FWD, permutations=1000, seed=5)
    assert abs(cf.value - mc.value) <= 3 * mc.stderr
    mc2 = expected_fraction_mc(ds, ["x"], "sample", FWD, permutations=1000, seed=6)
    assert abs(mc.value - mc2.value) <= 6 * math.hypot(mc.stderr, mc2.stderr)


def test_degenerate_target_baseline():
    ds = Dataset.from_arrays(np.ones(6), {"a": np.arange(6.0)})
    with pytest.raises(DegenerateError):
        expected_fraction(ds, ["a"])
    with pytest.raises(DegenerateError):
        expected_fraction_mc(ds, ["a"], permutations=2)
