import numpy as np
import pytest
from scipy.stats import spearmanr

from cumulinfo.estimators import DataError
from cumulinfo.synthdata import (
    GeneratorSpec,
    KINDS,
    bivariate_normal_suite,
    friedman1,
    friedman_response,
    generate,
    independent_uniform_builder,
    linear_builder,
    power_analysis,
)


def test_generate_examples():
    assert generate(GeneratorSpec("linear", 3)).tolist() == [0.0, 0.5, 1.0]
    assert generate(GeneratorSpec("constant", 4)).tolist() == [0.0] * 4
    assert generate(GeneratorSpec("step", 4, 2)) == pytest.approx([0, 0, 2 / 3, 2 / 3])
    e = generate(GeneratorSpec("exponential", 5))
    assert e[0] == 0.0 and e[-1] == 1.0 and np.all(np.diff(e) > 0)


@pytest.mark.parametrize("kind", ["step", "sawtooth"])
def test_invalid_discretization(kind):
    with pytest.raises(DataError, match="invalid discretization parameter"):
        generate(GeneratorSpec(kind, 10, 1))


@pytest.mark.parametrize("kind, p, rho2", [
    ("linear", 0, 1.0), ("step", 2, 0.9999), ("step", 4, 0.9996), ("step", 8, 0.9984),
    ("sawtooth", 8, 0.0016), ("sawtooth", 4, 0.0004), ("sawtooth", 2, 0.0001),
])
def test_rank_correlation_column(kind, p, rho2):
    x = generate(GeneratorSpec(kind, 200, p))
    assert round(spearmanr(x, np.arange(200)).statistic ** 2, 4) == rho2


@pytest.mark.parametrize("kind", KINDS)
def test_generators_reproducible(kind):
    spec = GeneratorSpec(kind, 50, 2, seed=9)
    a, b = generate(spec), generate(spec)
    assert a.tobytes() == b.tobytes() and a.size == 50


def test_friedman_values():
    assert friedman_response(np.full((1, 5), 0.5))[0] == pytest.approx(14.5711, abs=1e-4)
    assert friedman_response(np.zeros((1, 5)))[0] == pytest.approx(5.0)
    assert len(friedman1(30, include_correlated=True).feature_names) == 14
    ds = friedman1(30, seed=2, epsilon_sigma=0.0)
    X = ds.matrix([f"X{j}" for j in range(1, 6)])
    assert ds.target == pytest.approx(friedman_response(X))


def test_bivariate_normal_suite():
    ds = bivariate_normal_suite(500, seed=0)
    assert ds.n_rows == 500 and len(ds.feature_names) == 10
    for name in ds.feature_names:
        assert np.corrcoef(ds.target, ds.columns[name])[0, 1] ** 2 < 0.05
    assert bivariate_normal_suite(50, 3).columns["x"].tobytes() == bivariate_normal_suite(50, 3).columns["x"].tobytes()


def test_power_independent_near_nominal():
    rep = power_analysis(independent_uniform_builder(30, 1), ["x1"], (0.0, 0.5), 0.95, 200, seed=1)
    assert all(abs(p - 0.05) <= 0.03 for p in rep.power)
    assert len(rep.power) == 2


def test_power_linear_and_trend():
    sig = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
    rep = power_analysis(linear_builder(30), ["x"], sig, 0.95, 60, seed=2)
    assert rep.power[0] >= 0.95
    assert all(b <= a + 0.1 for a, b in zip(rep.power, rep.power[1:]))
    assert rep.contrast[0] > 0


def test_power_arguments():
    with pytest.raises(DataError):
        power_analysis(linear_builder(10), ["x"], (0.0,), 0.95, 10)
    with pytest.raises(DataError):
        power_analysis(linear_builder(10), ["x"], (0.0,), 1.5, 60)
