import math

import numpy as np
import pytest
from hypothesis import given

from ginidyn.core import metrics as tested
from ginidyn.core.dist import dirac
from ginidyn.core.dist import make_dist
from ginidyn.core.dist import mean
from ginidyn.core.dist import shifted_bernoulli
from ginidyn.core.dist import uniform
from ginidyn.helpers.exceptions import MetricException

from ..conftest import dists
from ..conftest import random_dist

THIRDS = [1 / 3, 1 / 3, 1 / 3]
LOPSIDED = [0.75, 0.0, 0.25]
FAR_TAIL = [0.9] + [0.0] * 9 + [0.1]

GINI_FORMS = [tested.gini_double_sum, tested.gini_iid_form, tested.gini_cdf, tested.gini]


@pytest.mark.parametrize("form", GINI_FORMS)
@pytest.mark.parametrize(
    "probs,expected",
    [
        ([0, 0, 0, 1], 0.0),
        (THIRDS, 4 / 9),
        (LOPSIDED, 0.75),
        ([0.5, 0.5], 0.5),
        ([0, 1], 0.0),
        ([0, 0, 0, 0, 0, 1], 0.0),
        (FAR_TAIL, 0.9),
    ],
)
def test_gini_examples(form, probs, expected):
    assert form(make_dist(probs)) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("form", GINI_FORMS)
def test_gini_dirac0_convention(form):
    assert form(dirac(0, 4)) == 0.0


@given(dists(min_trunc=1, positive_mean=True))
def test_gini_forms_agree(d):
    reference = tested.gini_iid_form(d)
    assert tested.gini_double_sum(d) == pytest.approx(reference, abs=1e-12)
    assert tested.gini_cdf(d) == pytest.approx(reference, abs=1e-12)


@given(dists(min_trunc=1, positive_mean=True))
def test_gini_range(d):
    g = tested.gini(d)
    assert -1e-12 <= g <= 1.0


def test_gini_minimized_by_equilibrium():
    rng = np.random.default_rng(7)
    for _ in range(200):
        d = random_dist(rng, 10, sparsity=0.3)
        mu = mean(d)
        if mu <= 0.0:
            continue
        assert tested.gini(d) >= tested.gini(shifted_bernoulli(mu, 11)) - 1e-12


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (THIRDS, THIRDS, 0.0),
        (THIRDS, [0, 1, 0], 2 / 3),
        (LOPSIDED, [0.5, 0.5, 0], 0.5),
        (THIRDS, [0, 1], 2 / 3),
    ],
)
def test_wasserstein1_examples(a, b, expected):
    assert tested.wasserstein1(make_dist(a), make_dist(b)) == pytest.approx(expected, abs=1e-15)


def test_wasserstein1_metric_axioms():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b, c = (random_dist(rng, int(rng.integers(0, 15)), sparsity=0.4) for _ in range(3))
        ab = tested.wasserstein1(a, b)
        assert ab >= 0.0
        assert ab == pytest.approx(tested.wasserstein1(b, a), abs=1e-15)
        assert ab <= tested.wasserstein1(a, c) + tested.wasserstein1(c, b) + 1e-12


@given(dists())
def test_wasserstein1_to_dirac0_is_mean(d):
    assert tested.wasserstein1(d, dirac(0, 0)) == pytest.approx(mean(d), abs=1e-12)
    assert tested.w1_to_dirac0(d) == pytest.approx(mean(d), abs=1e-12)


@pytest.mark.parametrize(
    "a,b,p,expected",
    [
        (THIRDS, THIRDS, 1.0, 0.0),
        (FAR_TAIL, [1.0], 1.0, 0.2),
        ([0.5, 0.5], [1.0], 1.0, 1.0),
        ([0.5, 0.5], [1.0], 2.0, math.sqrt(0.5)),
        ([0.5, 0.5], [1.0], math.inf, 0.5),
    ],
)
def test_lp_distance(a, b, p, expected):
    assert tested.lp_distance(make_dist(a), make_dist(b), p) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("p", [0.5, 0.0, -1.0, math.nan])
def test_lp_distance_invalid_order(p):
    with pytest.raises(MetricException.InvalidOrderError):
        tested.lp_distance(make_dist([1.0]), make_dist([1.0]), p)


@pytest.mark.parametrize(
    "probs,expected",
    [([0, 0, 0, 0, 1], 0.0), ([0.5, 0.5], 0.25), (LOPSIDED, 0.375)],
)
def test_var_sqrt(probs, expected):
    assert tested.var_sqrt(make_dist(probs)) == pytest.approx(expected, abs=1e-15)


@given(dists(min_trunc=1, positive_mean=True))
def test_var_sqrt_bounded_by_mean_times_gini(d):
    assert tested.var_sqrt(d) <= mean(d) * tested.gini(d) + 1e-12


@pytest.mark.parametrize(
    "probs,mu,expected",
    [
        ([0, 0, 1], 2.0, (0.0, 0.0)),
        (THIRDS, 1.0, (1 / 3, 1 / 3)),
        ([0.5, 0.5], 0.5, (0.25, 0.25)),
    ],
)
def test_key_tail_functionals(probs, mu, expected):
    upper, lower = tested.key_tail_functionals(make_dist(probs), mu)
    assert upper == pytest.approx(expected[0], abs=1e-15)
    assert lower == pytest.approx(expected[1], abs=1e-15)


@given(dists(min_trunc=1))
def test_key_tail_functionals_balance_at_mean(d):
    upper, lower = tested.key_tail_functionals(d)
    assert upper == pytest.approx(lower, abs=1e-12)
    assert upper >= -1e-12


@given(dists(min_trunc=1))
def test_key_tails_sum_to_abs_deviation(d):
    upper, lower = tested.key_tail_functionals(d)
    assert upper + lower == pytest.approx(tested.abs_deviation(d, mean(d)), abs=1e-12)


def test_abs_deviation():
    assert tested.abs_deviation(make_dist([0.5, 0.5]), 0.5) == pytest.approx(0.5)
    assert tested.abs_deviation(uniform(2), 1.0) == pytest.approx(2 / 3)
