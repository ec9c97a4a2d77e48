import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import empirical_cdf_sup_distance, naive_dominated_counts
from mcde.empirical import EmpiricalCopula, PseudoSample, pseudo_observations
from mcde.errors import InputError
from mcde.families import ClaytonCopula


def test_pseudo_observations_hand_example():
    data = [(1, 5), (2, 4), (3, 6)]
    U = pseudo_observations(data).U
    assert np.allclose(U, [(0.25, 0.50), (0.50, 0.25), (0.75, 0.75)])


def test_single_row():
    ps = pseudo_observations([[3.7, -1.0, 9.9]])
    assert np.allclose(ps.U, 0.5)


def test_sorted_columns_invariant(rng):
    data = rng.normal(size=(40, 3))
    U = pseudo_observations(data).U
    want = np.arange(1, 41) / 41.0
    for j in range(3):
        assert np.allclose(np.sort(U[:, j]), want)


def test_rank_invariance_bit_exact(rng):
    data = rng.normal(size=(60, 2))
    base = pseudo_observations(data).U
    transformed = data.copy()
    transformed[:, 0] = np.exp(transformed[:, 0])
    assert np.array_equal(pseudo_observations(transformed).U, base)
    transformed[:, 1] = 2.5 * transformed[:, 1] - 7.0
    assert np.array_equal(pseudo_observations(transformed).U, base)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50_000, 50_000), min_size=3, max_size=25, unique=True))
def test_rank_invariance_property(values):
    col = np.asarray(values, dtype=float) / 1000.0  # spaced so arctan stays injective
    data = np.column_stack([col, np.sin(col)])
    monotone = np.column_stack([np.arctan(col) * 3.0 + 1.0, np.sin(col)])
    assert np.array_equal(pseudo_observations(monotone).U,
                          pseudo_observations(data).U)


def test_ties_average_ranks_and_flag():
    ps = pseudo_observations([(1.0, 2.0), (1.0, 3.0), (4.0, 1.0)])
    assert ps.ties
    # tied pair shares the average rank (1+2)/2 = 1.5
    assert np.allclose(np.sort(ps.U[:, 0]), [0.375, 0.375, 0.75])
    assert not pseudo_observations([(1, 2), (2, 3)]).ties


def test_nan_rejected():
    with pytest.raises(InputError):
        pseudo_observations([(np.nan, 1.0), (2.0, 3.0)])


def test_eval_hand_examples():
    ec = EmpiricalCopula(PseudoSample(np.array([[1 / 3, 2 / 3], [2 / 3, 1 / 3]])))
    assert ec.eval([0.5, 0.5]) == 0.0
    assert ec.eval([1.0, 1.0]) == pytest.approx(2.0 / 3.0)
    single = EmpiricalCopula(PseudoSample(np.array([[0.5, 0.5]])))
    assert single.eval([0.5, 0.5]) == 0.5


def test_eval_validation():
    ec = EmpiricalCopula(PseudoSample(np.array([[0.5, 0.5]])))
    with pytest.raises(InputError):
        ec.eval([0.5, 1.5])
    with pytest.raises(InputError):
        ec.eval([0.5, np.nan])
    with pytest.raises(InputError):
        ec.eval([0.5, 0.5, 0.5])


def test_eval_at_sample_hand_examples():
    single = EmpiricalCopula(PseudoSample(np.array([[0.5, 0.5]])))
    assert np.allclose(single.eval_at_sample(), [0.5])
    two = EmpiricalCopula(PseudoSample(np.array([[1 / 3, 2 / 3], [2 / 3, 1 / 3]])))
    assert np.allclose(two.eval_at_sample(), [1 / 3, 1 / 3])


def test_eval_at_sample_matches_naive_oracle(rng):
    U = pseudo_observations(rng.normal(size=(50, 2))).U
    ec = EmpiricalCopula(PseudoSample(U))
    want = naive_dominated_counts(U, U) / 51.0
    assert np.array_equal(ec.eval_at_sample(), want)


def test_sweep_handles_ties(rng):
    # duplicated rows create ties in both coordinates
    U = pseudo_observations(rng.integers(0, 6, size=(40, 2)).astype(float)).U
    ec = EmpiricalCopula(PseudoSample(U))
    want = naive_dominated_counts(U, U) / 41.0
    assert np.array_equal(ec.eval_at_sample(), want)


def test_eval_at_sample_trivariate_matches_naive(rng):
    U = pseudo_observations(rng.normal(size=(30, 3))).U
    ec = EmpiricalCopula(PseudoSample(U))
    want = naive_dominated_counts(U, U) / 31.0
    assert np.array_equal(ec.eval_at_sample(), want)


def test_eval_matches_eval_at_sample(rng):
    U = pseudo_observations(rng.normal(size=(25, 2))).U
    ec = EmpiricalCopula(PseudoSample(U))
    assert np.allclose(ec.eval(U), ec.eval_at_sample())


def test_full_corner_value():
    U = pseudo_observations(np.random.default_rng(0).normal(size=(9, 2))).U
    ec = EmpiricalCopula(PseudoSample(U))
    assert ec.eval([1.0, 1.0]) == pytest.approx(0.9)


def test_sup_distance_shrinks_with_n():
    c = ClaytonCopula(2.0)
    dist = {}
    for n in (100, 1000, 10000):
        ps = pseudo_observations(c.sample(n, seed=77))
        dist[n] = empirical_cdf_sup_distance(c, ps.U)
    assert dist[10000] < 0.03
    assert dist[1000] < dist[100] + 0.01
    assert dist[10000] < dist[1000] + 0.01
