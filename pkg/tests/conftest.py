import numpy as np
import pytest

from mcde.families import (
    ClaytonCopula,
    FrankCopula,
    GaussianCopula,
    GumbelCopula,
    JoeCopula,
)

# (class, list of parameters to sweep) for the cdf-capable fittable families
FAMILY_SWEEP = [
    (ClaytonCopula, [0.5, 1.0, 2.0, 5.0]),
    (GumbelCopula, [1.0, 1.5, 2.0, 5.0]),
    (FrankCopula, [-3.0, 0.5, 2.0, 5.0]),
    (JoeCopula, [1.0, 1.5, 2.0, 5.0]),
    (GaussianCopula, [-0.7, -0.2, 0.3, 0.8]),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def fd_log_grad(copula, U, h=1e-6):
    """Central finite differences of log C in the parameter."""
    th = copula.theta1
    step = max(h, h * abs(th))
    if copula.name == "gaussian":
        step = min(step, 0.4 * (1.0 - abs(th)))
    hi = copula.with_theta([th + step])
    lo = copula.with_theta([th - step])
    return (np.log(hi.cdf(U)) - np.log(lo.cdf(U))) / (2.0 * step)


def naive_dominated_counts(rows, queries):
    """Brute-force #{i : rows_i <= q} per query; the eval oracle."""
    out = np.empty(queries.shape[0], dtype=int)
    for i, q in enumerate(queries):
        out[i] = int((rows <= q[None, :]).all(axis=1).sum())
    return out


def empirical_cdf_sup_distance(copula, draws, grid_n=20):
    """Sup |empirical copula - C| over an interior grid."""
    n = draws.shape[0]
    ticks = np.arange(1, grid_n + 1) / (grid_n + 1.0)
    uu, vv = np.meshgrid(ticks, ticks, indexing="ij")
    pts = np.column_stack([uu.ravel(), vv.ravel()])
    emp = naive_dominated_counts(draws, pts) / n
    return float(np.max(np.abs(emp - copula.cdf(pts))))
