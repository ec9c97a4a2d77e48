"""Bivariate standard normal CDF.

Double-precision evaluation of ``P(X <= h, Y <= k)`` for a standard normal
pair with correlation ``rho``, using tetrachoric Gauss-Legendre quadrature
over ``asin(rho)`` for moderate correlations and the complementary
transformed integral for ``|rho| > 0.925``.  Absolute error is well below
1e-7 over the full correlation range, which is what the Gaussian copula
layer requires.
"""

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import ndtr

_TWOPI = 2.0 * np.pi

# Node count by correlation magnitude, as in the classical hybrid scheme.
_RULES = {n: leggauss(n) for n in (6, 12, 20)}


def _rule_for(r):
    if abs(r) < 0.3:
        return _RULES[6]
    if abs(r) < 0.75:
        return _RULES[12]
    return _RULES[20]


def _bvn_upper(dh, dk, r):
    """P(X > dh, Y > dk) for arrays dh, dk and scalar correlation r."""
    dh = np.asarray(dh, dtype=float)
    dk = np.asarray(dk, dtype=float)
    x, w = _rule_for(r)

    h = dh.copy()
    k = dk.copy()
    hk = h * k
    bvn = np.zeros_like(h)

    if abs(r) < 0.925:
        hs = (h * h + k * k) / 2.0
        asr = np.arcsin(r) / 2.0
        sn = np.sin(asr * (1.0 + x)[:, None])  # nodes mapped onto (0, asin r)
        terms = np.exp((sn * hk[None, :] - hs[None, :]) / (1.0 - sn * sn))
        bvn = (w[:, None] * terms).sum(axis=0) * asr / _TWOPI
        bvn = bvn + ndtr(-h) * ndtr(-k)
    else:
        if r < 0:
            k = -k
            hk = -hk
        if abs(r) < 1.0:
            a_s = (1.0 - r) * (1.0 + r)
            a = np.sqrt(a_s)
            bs = (h - k) ** 2
            c = (4.0 - hk) / 8.0
            d = (12.0 - hk) / 80.0
            asr = -(bs / a_s + hk) / 2.0
            m = asr > -100.0
            bvn = np.where(
                m,
                a * np.exp(asr) * (1.0 - c * (bs - a_s) * (1.0 - d * bs) / 3.0
                                   + c * d * a_s * a_s),
                0.0,
            )
            m = hk > -100.0
            b = np.sqrt(bs)
            sp = np.sqrt(_TWOPI) * ndtr(-b / a)
            bvn = bvn - np.where(
                m, np.exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0), 0.0
            )
            a2 = a / 2.0
            xs = (a2 * (x[:, None] + 1.0)) ** 2
            rs = np.sqrt(1.0 - xs)
            asr = -(bs[None, :] / xs + hk[None, :]) / 2.0
            sp = 1.0 + c[None, :] * xs * (1.0 + 5.0 * d[None, :] * xs)
            ep = np.exp(-hk[None, :] * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs
            contrib = np.where(asr > -100.0, np.exp(asr) * (ep - sp), 0.0)
            bvn = bvn + a2 * (w[:, None] * contrib).sum(axis=0)
            bvn = -bvn / _TWOPI
        if r > 0:
            bvn = bvn + ndtr(-np.maximum(h, k))
        else:
            bvn = -bvn + np.maximum(0.0, ndtr(-h) - ndtr(-k))
    return np.clip(bvn, 0.0, 1.0)


def bvn_cdf(h, k, rho):
    """P(X <= h, Y <= k) for standard bivariate normal with correlation rho.

    ``h`` and ``k`` broadcast against each other; ``rho`` must be a scalar in
    (-1, 1).  Infinite arguments are handled (reduce to univariate margins).
    """
    if not -1.0 < rho < 1.0:
        raise ValueError(f"correlation must be in (-1, 1), got {rho}")
    h, k = np.broadcast_arrays(np.asarray(h, float), np.asarray(k, float))
    out = np.empty(h.shape, dtype=float)

    lo = (h == -np.inf) | (k == -np.inf)
    hi_h = (h == np.inf) & ~lo
    hi_k = (k == np.inf) & ~lo
    fin = ~(lo | hi_h | hi_k)

    out[lo] = 0.0
    out[hi_h] = ndtr(k[hi_h])
    out[hi_k & ~hi_h] = ndtr(h[hi_k & ~hi_h])
    out[hi_h & hi_k] = 1.0
    if fin.any():
        if rho == 0.0:
            out[fin] = ndtr(h[fin]) * ndtr(k[fin])
        else:
            out[fin] = _bvn_upper(-h[fin], -k[fin], rho)
    return out if out.ndim else float(out)
