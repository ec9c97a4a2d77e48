import numpy as np
import pytest
from scipy import integrate, stats

from mcde.bvnorm import bvn_cdf


def quad_oracle(h, k, rho):
    """Tetrachoric integral over the correlation, by adaptive quadrature."""
    base = stats.norm.cdf(h) * stats.norm.cdf(k)

    def integrand(r):
        return np.exp(-(h * h - 2 * r * h * k + k * k) / (2 * (1 - r * r))) / np.sqrt(
            1 - r * r
        )

    val, _ = integrate.quad(integrand, 0.0, rho, epsabs=1e-14, epsrel=1e-12, limit=500)
    return base + val / (2 * np.pi)


@pytest.mark.parametrize("rho", [-0.999, -0.95, -0.6, -0.1, 0.2, 0.7, 0.9, 0.924,
                                 0.926, 0.99, 0.999])
def test_matches_quadrature_oracle(rho):
    hs = [-8.0, -5.0, -2.3, -0.7, 0.0, 0.9, 2.5, 4.0]
    for h in hs:
        for k in hs:
            assert bvn_cdf(h, k, rho) == pytest.approx(quad_oracle(h, k, rho), abs=1e-9)


def test_zero_correlation_is_product():
    h = np.array([-2.0, 0.3, 1.7])
    k = np.array([0.5, -1.2, 2.0])
    assert np.allclose(bvn_cdf(h, k, 0.0), stats.norm.cdf(h) * stats.norm.cdf(k))


def test_symmetry_and_margins():
    assert bvn_cdf(0.3, -1.2, 0.6) == pytest.approx(bvn_cdf(-1.2, 0.3, 0.6), abs=1e-15)
    assert bvn_cdf(0.8, np.inf, 0.5) == pytest.approx(stats.norm.cdf(0.8), abs=1e-15)
    assert bvn_cdf(np.inf, -0.4, -0.5) == pytest.approx(stats.norm.cdf(-0.4), abs=1e-15)
    assert bvn_cdf(-np.inf, 1.0, 0.5) == 0.0
    assert bvn_cdf(np.inf, np.inf, 0.9) == 1.0


def test_extreme_correlation_limits():
    for h, k in [(-1.0, 0.5), (0.2, 0.1), (-2.0, -2.0)]:
        assert bvn_cdf(h, k, 0.99999) == pytest.approx(
            min(stats.norm.cdf(h), stats.norm.cdf(k)), abs=1e-4
        )
        assert bvn_cdf(h, k, -0.99999) == pytest.approx(
            max(0.0, stats.norm.cdf(h) + stats.norm.cdf(k) - 1.0), abs=1e-4
        )


def test_relative_accuracy_deep_in_corner():
    for u in [1e-6, 1e-8]:
        x = stats.norm.ppf(u)
        got = bvn_cdf(x, x, 0.5)
        want = quad_oracle(x, x, 0.5)
        assert got == pytest.approx(want, rel=1e-10)


def test_rho_validation():
    with pytest.raises(ValueError):
        bvn_cdf(0.0, 0.0, 1.0)
