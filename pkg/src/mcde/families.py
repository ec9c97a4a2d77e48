"""Parametric copula families.

Each family evaluates its CDF, the parameter gradient of the log-CDF,
the density where tractable, and draws exact samples.  All evaluation
methods accept a single point of shape ``(d,)`` or a batch ``(n, d)``
and are vectorised over rows.

Supported families and parameter ranges:

==============  ==========================  =========================
family          parameter                   dimensions
==============  ==========================  =========================
clayton         theta > 0                   d >= 2 (cdf, pdf, sample)
gumbel          theta >= 1                  d >= 2 (pdf: d = 2)
frank           theta != 0                  d >= 2 for theta > 0
joe             theta >= 1                  d >= 2 (pdf: d = 2)
gaussian        -1 < theta < 1              d = 2
studentt        -1 < theta < 1, fixed df    d = 2 (no cdf)
independence    none                        d >= 2
==============  ==========================  =========================

Archimedean samplers use the latent-frailty construction (gamma,
positive stable, logarithmic-series and Sibuya mixing variables);
elliptical samplers push correlated latent variables through the
univariate CDF.
"""

from abc import ABC, abstractmethod

import numpy as np
from scipy import stats
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import gammaln, ndtr, ndtri

from .bvnorm import bvn_cdf
from .errors import (
    BoundaryError,
    InputError,
    ParameterError,
    UnsupportedOperationError,
    UsageError,
)

# Inputs are clamped to at least this value before log-gradient evaluation,
# so that fitting never sees log(0).  Diagnostics bypass the clamp.
CLAMP_FLOOR = 1e-12


def _check_points(u, d, open_cube=False):
    """Validate evaluation points, returning a (n, d) float array."""
    U = np.asarray(u, dtype=float)
    single = U.ndim == 1
    if single:
        U = U[None, :]
    if U.ndim != 2 or U.shape[1] != d:
        raise InputError(f"expected points of dimension {d}, got shape {np.shape(u)}")
    if np.isnan(U).any():
        raise InputError("evaluation points contain NaN")
    if open_cube:
        if (U <= 0).any() or (U >= 1).any():
            raise InputError("points must lie strictly inside (0, 1)^d")
    elif (U < 0).any() or (U > 1).any():
        raise InputError("points must lie in [0, 1]^d")
    return U, single


def _ret(values, single):
    values = np.asarray(values, dtype=float)
    return float(values[0]) if single else values


class Copula(ABC):
    """A parametric copula: family tag, dimension and parameter vector."""

    name = "base"
    n_params = 1

    def __init__(self, theta, d=2):
        d = int(d)
        if d < 2:
            raise ParameterError("copula dimension must be at least 2")
        self.d = d
        self.theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.theta.shape != (self.n_params,):
            raise ParameterError(
                f"{self.name} takes {self.n_params} parameter(s), got {self.theta.shape}"
            )
        self._validate_theta()

    def _validate_theta(self):
        pass

    @property
    def theta1(self):
        return float(self.theta[0])

    def __repr__(self):
        return f"{type(self).__name__}(theta={np.round(self.theta, 6).tolist()}, d={self.d})"

    def with_theta(self, theta):
        return type(self)(theta, d=self.d)

    # -- evaluation ------------------------------------------------------

    @abstractmethod
    def cdf(self, u):
        """C(u) on the closed cube."""

    def pdf(self, u):
        raise UnsupportedOperationError(
            f"{self.name} copula density is not implemented for d={self.d}"
        )

    def log_grad_cdf(self, u, clamp=True):
        """Gradient of log C(u) with respect to the parameters, shape (n, m).

        With ``clamp=True`` (default) coordinates are floored at
        ``CLAMP_FLOOR`` so the gradient is always finite; diagnostics pass
        ``clamp=False`` to observe genuine boundary behaviour.
        """
        U, single = _check_points(u, self.d)
        if clamp:
            U = np.clip(U, CLAMP_FLOOR, 1.0)
        elif (U == 0).any():
            raise BoundaryError("log-gradient undefined where C(u) = 0")
        g = self._log_grad(U)
        return g[0] if single else g

    def _log_grad(self, U):
        raise UnsupportedOperationError(
            f"{self.name} copula has no log-CDF gradient (d={self.d})"
        )

    @abstractmethod
    def sample(self, n, seed=None):
        """Draw n rows from the copula; deterministic for a fixed seed."""

    def _rng(self, seed):
        return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    # -- optimisation coordinates ---------------------------------------

    def to_internal(self, theta=None):
        """Map parameters to unconstrained optimiser coordinates."""
        raise UnsupportedOperationError(f"{self.name} copula is not fittable")

    def from_internal(self, t):
        raise UnsupportedOperationError(f"{self.name} copula is not fittable")

    @classmethod
    def initial_theta(cls, U):
        """Cheap dependence-based starting value from pseudo-observations."""
        raise UnsupportedOperationError(f"{cls.name} copula is not fittable")


def _mean_pairwise_tau(U):
    n, d = U.shape
    taus = []
    for i in range(d):
        for j in range(i + 1, d):
            taus.append(stats.kendalltau(U[:, i], U[:, j]).statistic)
    return float(np.mean(taus))


# ---------------------------------------------------------------------------
# Archimedean families
# ---------------------------------------------------------------------------


class ClaytonCopula(Copula):
    """C(u) = (sum u_k^(-theta) - d + 1)^(-1/theta), theta > 0."""

    name = "clayton"

    def _validate_theta(self):
        if not self.theta1 > 0:
            raise ParameterError(f"clayton requires theta > 0, got {self.theta1}")

    def _log_cdf_terms(self, U):
        # log-space accumulation of S = sum u^(-theta) - (d - 1)
        th = self.theta1
        lnu = np.log(U)
        a = -th * lnu
        m = a.max(axis=1)
        e = np.exp(a - m[:, None])
        s_scaled = e.sum(axis=1) - (self.d - 1) * np.exp(-m)
        return lnu, e, m, s_scaled

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        out = np.zeros(U.shape[0])
        ok = ~(U == 0).any(axis=1)
        if ok.any():
            _, _, m, s_scaled = self._log_cdf_terms(U[ok])
            out[ok] = np.exp(-(m + np.log(s_scaled)) / self.theta1)
        return _ret(out, single)

    def _log_grad(self, U):
        th = self.theta1
        lnu, e, m, s_scaled = self._log_cdf_terms(U)
        ln_s = m + np.log(s_scaled)
        num = (e * lnu).sum(axis=1)  # sum u^(-theta) ln u, scaled by e^(-m)
        g = ln_s / th**2 + num / (th * s_scaled)
        return g[:, None]

    def pdf(self, u):
        # closed-form product density, valid for any dimension
        U, single = _check_points(u, self.d, open_cube=True)
        th = self.theta1
        lnu, _, m, s_scaled = self._log_cdf_terms(U)
        ln_s = m + np.log(s_scaled)
        k = np.arange(1, self.d)
        logc = (
            np.log1p(k * th).sum()
            - (th + 1.0) * lnu.sum(axis=1)
            - (1.0 / th + self.d) * ln_s
        )
        return _ret(np.exp(logc), single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        th = self.theta1
        v = rng.gamma(1.0 / th, size=n)
        x = rng.exponential(size=(n, self.d))
        return (1.0 + x / v[:, None]) ** (-1.0 / th)

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return np.log(th)

    def from_internal(self, t):
        return np.array([np.exp(float(t))])

    @classmethod
    def initial_theta(cls, U):
        tau = np.clip(_mean_pairwise_tau(U), 0.005, 0.93)
        return np.array([2.0 * tau / (1.0 - tau)])


class GumbelCopula(Copula):
    """C(u) = exp(-(sum (-ln u_k)^theta)^(1/theta)), theta >= 1."""

    name = "gumbel"

    def _validate_theta(self):
        if not self.theta1 >= 1:
            raise ParameterError(f"gumbel requires theta >= 1, got {self.theta1}")

    def _w(self, U):
        # w = (sum b^theta)^(1/theta) with b = -ln u, computed in scaled form
        th = self.theta1
        b = -np.log(U)
        m = b.max(axis=1)
        safe = m > 0
        z = np.zeros_like(b)
        z[safe] = (b[safe] / m[safe, None]) ** th
        return b, m, z

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        out = np.zeros(U.shape[0])
        zero = (U == 0).any(axis=1)
        ok = ~zero
        if ok.any():
            _, m, z = self._w(U[ok])
            w = np.where(m > 0, m * z.sum(axis=1) ** (1.0 / self.theta1), 0.0)
            out[ok] = np.exp(-w)
        return _ret(out, single)

    def _log_grad(self, U):
        th = self.theta1
        b, m, z = self._w(U)
        zsum = z.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ln_ratio = np.log(b / m[:, None])
        zl = np.where(z > 0, z * ln_ratio, 0.0)  # b = 0 contributes nothing
        safe = m > 0
        g = np.zeros(U.shape[0])
        ln_a = th * np.log(m[safe]) + np.log(zsum[safe])
        da_over_a = np.log(m[safe]) + zl[safe].sum(axis=1) / zsum[safe]
        w = m[safe] * zsum[safe] ** (1.0 / th)
        g[safe] = w * (ln_a / th**2 - da_over_a / th)
        return g[:, None]

    def pdf(self, u):
        if self.d != 2:
            raise UnsupportedOperationError("gumbel density implemented for d=2 only")
        U, single = _check_points(u, self.d, open_cube=True)
        th = self.theta1
        bu, bv = -np.log(U[:, 0]), -np.log(U[:, 1])
        a = bu**th + bv**th
        w = a ** (1.0 / th)
        c = (
            np.exp(-w)
            * (bu * bv) ** (th - 1.0)
            / (U[:, 0] * U[:, 1])
            * a ** (1.0 / th - 2.0)
            * (w + th - 1.0)
        )
        return _ret(c, single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        th = self.theta1
        if th == 1.0:
            return rng.random((n, self.d))
        v = _positive_stable(1.0 / th, n, rng)
        x = rng.exponential(size=(n, self.d))
        return np.exp(-((x / v[:, None]) ** (1.0 / th)))

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return np.log(max(th - 1.0, 1e-300))

    def from_internal(self, t):
        return np.array([1.0 + np.exp(float(t))])

    @classmethod
    def initial_theta(cls, U):
        tau = np.clip(_mean_pairwise_tau(U), 0.005, 0.93)
        return np.array([1.0 / (1.0 - tau)])


class FrankCopula(Copula):
    """Frank copula, theta != 0 (theta > 0 required for d >= 3)."""

    name = "frank"

    def _validate_theta(self):
        if self.theta1 == 0:
            raise ParameterError("frank requires theta != 0")
        if self.d > 2 and self.theta1 < 0:
            raise ParameterError("frank with d >= 3 requires theta > 0")

    def _terms(self, U):
        th = self.theta1
        p = np.expm1(-th * U)
        q = np.expm1(-th)
        g = p.prod(axis=1) / q ** (self.d - 1)  # A - 1
        return p, q, g

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        _, _, g = self._terms(U)
        return _ret(-np.log1p(g) / self.theta1, single)

    def _log_grad(self, U):
        th = self.theta1
        p, q, g = self._terms(U)
        ln_a = np.log1p(g)
        r = (U * np.exp(-th * U) / p).sum(axis=1)
        da = g * ((self.d - 1) * np.exp(-th) / q - r)  # dA/dtheta
        grad = -1.0 / th + da / ((1.0 + g) * ln_a)
        return grad[:, None]

    def pdf(self, u):
        if self.d != 2:
            raise UnsupportedOperationError("frank density implemented for d=2 only")
        U, single = _check_points(u, self.d, open_cube=True)
        th = self.theta1
        pu, pv = np.expm1(-th * U[:, 0]), np.expm1(-th * U[:, 1])
        q = np.expm1(-th)
        num = -th * q * np.exp(-th * (U[:, 0] + U[:, 1]))
        den = (q + pu * pv) ** 2
        return _ret(num / den, single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        th = self.theta1
        if self.d == 2:
            # conditional inversion, valid for either sign of theta
            u = rng.random(n)
            t = rng.random(n)
            v = -np.log1p(t * np.expm1(-th) / (np.exp(-th * u) * (1.0 - t) + t)) / th
            return np.column_stack([u, v])
        v = stats.logser.rvs(-np.expm1(-th), size=n, random_state=rng).astype(float)
        x = rng.exponential(size=(n, self.d))
        return -np.log1p(np.expm1(-th) * np.exp(-x / v[:, None])) / th

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return th

    def from_internal(self, t):
        return np.array([float(t)])

    @classmethod
    def initial_theta(cls, U):
        tau = _mean_pairwise_tau(U)
        sign = 1.0 if tau >= 0 else -1.0
        mag = np.clip(abs(tau), 0.005, 0.93)
        theta = brentq(lambda th: frank_kendall_tau(th) - mag, 1e-4, 80.0)
        return np.array([sign * theta])


def _debye1(theta):
    """D1(theta) = (1/theta) * int_0^theta t / (e^t - 1) dt for theta > 0."""
    val, _ = quad(lambda t: t / np.expm1(t) if t > 0 else 1.0, 0.0, theta, limit=200)
    return val / theta


def frank_kendall_tau(theta):
    """Kendall's tau of the bivariate Frank copula (odd in theta)."""
    if theta == 0:
        return 0.0
    a = abs(theta)
    tau = 1.0 - 4.0 / a * (1.0 - _debye1(a))
    return float(np.sign(theta) * tau)


def joe_kendall_tau(theta, terms=20000):
    """Kendall's tau of the bivariate Joe copula via its series expansion."""
    k = np.arange(1, terms + 1, dtype=float)
    s = (1.0 / (k * (theta * k + 2.0) * (theta * (k - 1.0) + 2.0))).sum()
    return float(1.0 - 4.0 * s)


class JoeCopula(Copula):
    """Generator-based Joe copula, theta >= 1."""

    name = "joe"

    def _validate_theta(self):
        if not self.theta1 >= 1:
            raise ParameterError(f"joe requires theta >= 1, got {self.theta1}")

    def _terms(self, U):
        th = self.theta1
        lx = th * np.log1p(-U)  # log (1-u)^theta; u = 1 -> -inf
        x = np.exp(lx)
        one_minus_x = -np.expm1(lx)
        log_p = np.log(one_minus_x).sum(axis=1)  # log prod (1 - x_k)
        return lx, x, one_minus_x, log_p

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        _, _, _, log_p = self._terms(U)
        p = np.exp(log_p)
        return _ret(-np.expm1(np.log1p(-p) / self.theta1), single)

    def _log_grad(self, U):
        th = self.theta1
        lx, x, one_minus_x, log_p = self._terms(U)
        p = np.exp(log_p)
        ln_q = np.log1p(-p)  # log(1 - P), P = prod(1 - x_k)
        xl = np.where(x > 0, x * lx / th, 0.0)  # x_k * ln(1-u_k)
        s = (xl / one_minus_x).sum(axis=1)
        dq = p * s  # dQ/dtheta = -dP/dtheta
        c = -np.expm1(ln_q / th)
        dc = -np.exp(ln_q / th) * (-ln_q / th**2 + dq / (th * (1.0 - p)))
        return (dc / c)[:, None]

    def pdf(self, u):
        if self.d != 2:
            raise UnsupportedOperationError("joe density implemented for d=2 only")
        U, single = _check_points(u, self.d, open_cube=True)
        th = self.theta1
        x = (1.0 - U[:, 0]) ** th
        y = (1.0 - U[:, 1]) ** th
        q = x + y - x * y
        c = (
            ((1.0 - U[:, 0]) * (1.0 - U[:, 1])) ** (th - 1.0)
            * q ** (1.0 / th - 2.0)
            * (th * q + (th - 1.0) * (1.0 - x) * (1.0 - y))
        )
        return _ret(c, single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        th = self.theta1
        if th == 1.0:
            return rng.random((n, self.d))
        v = _sibuya(1.0 / th, n, rng)
        x = rng.exponential(size=(n, self.d))
        b = -np.expm1(-x / v[:, None])
        return -np.expm1(np.log(b) / th)

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return np.log(max(th - 1.0, 1e-300))

    def from_internal(self, t):
        return np.array([1.0 + np.exp(float(t))])

    @classmethod
    def initial_theta(cls, U):
        tau = np.clip(_mean_pairwise_tau(U), 0.005, 0.93)
        theta = brentq(lambda th: joe_kendall_tau(th) - tau, 1.0 + 1e-9, 300.0)
        return np.array([theta])


# ---------------------------------------------------------------------------
# Latent mixing variables for Archimedean samplers
# ---------------------------------------------------------------------------


def _positive_stable(alpha, n, rng):
    """One-sided stable variates with Laplace transform exp(-t^alpha)."""
    theta = rng.random(n) * np.pi  # uniform on (0, pi)
    w = rng.exponential(size=n)
    num = np.sin(alpha * theta) * np.sin(theta) ** (-1.0 / alpha)
    tail = (np.sin((1.0 - alpha) * theta) / w) ** ((1.0 - alpha) / alpha)
    return num * tail


def _sibuya_survival(k, alpha):
    """P(V > k) = prod_{j<=k} (1 - alpha/j), evaluated in closed form."""
    k = np.asarray(k, dtype=float)
    out = np.ones_like(k)
    pos = k >= 1
    out[pos] = np.exp(
        gammaln(k[pos] + 1.0 - alpha) - gammaln(k[pos] + 1.0) - gammaln(1.0 - alpha)
    )
    return out


def _sibuya(alpha, n, rng):
    """Sibuya(alpha) variates by exact inversion of the survival function."""
    w = rng.random(n)
    from scipy.special import gamma as _gamma

    k = np.ceil((w * _gamma(1.0 - alpha)) ** (-1.0 / alpha))
    k = np.maximum(k, 1.0)
    # the asymptotic guess is off by O(1); nudge to the exact inversion point
    for _ in range(200):
        too_high = (k > 1) & (_sibuya_survival(k - 1.0, alpha) <= w)
        too_low = _sibuya_survival(k, alpha) > w
        if not (too_high.any() or too_low.any()):
            break
        k = np.where(too_high, k - 1.0, k)
        k = np.where(too_low, k + 1.0, k)
    return k


# ---------------------------------------------------------------------------
# Elliptical families
# ---------------------------------------------------------------------------


class GaussianCopula(Copula):
    """Bivariate Gaussian copula with correlation theta in (-1, 1)."""

    name = "gaussian"
    _fd_step = 1e-6

    def __init__(self, theta, d=2):
        if d != 2:
            raise UnsupportedOperationError("gaussian copula implemented for d=2 only")
        super().__init__(theta, d=d)

    def _validate_theta(self):
        if not -1.0 < self.theta1 < 1.0:
            raise ParameterError(f"gaussian requires -1 < theta < 1, got {self.theta1}")

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        x = ndtri(U[:, 0])
        y = ndtri(U[:, 1])
        return _ret(bvn_cdf(x, y, self.theta1), single)

    def _log_grad(self, U):
        # no closed form; central differences in theta on the log-CDF
        th = self.theta1
        h = max(self._fd_step, self._fd_step * abs(th))
        h = min(h, 0.5 * (1.0 - abs(th)))
        x, y = ndtri(U[:, 0]), ndtri(U[:, 1])
        hi = np.log(bvn_cdf(x, y, th + h))
        lo = np.log(bvn_cdf(x, y, th - h))
        return ((hi - lo) / (2.0 * h))[:, None]

    def pdf(self, u):
        U, single = _check_points(u, self.d, open_cube=True)
        th = self.theta1
        x, y = ndtri(U[:, 0]), ndtri(U[:, 1])
        s = 1.0 - th * th
        logc = -0.5 * np.log(s) - (th * th * (x * x + y * y) - 2.0 * th * x * y) / (2.0 * s)
        return _ret(np.exp(logc), single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        z = rng.standard_normal((n, 2))
        th = self.theta1
        z2 = th * z[:, 0] + np.sqrt(1.0 - th * th) * z[:, 1]
        return np.column_stack([ndtr(z[:, 0]), ndtr(z2)])

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return np.arctanh(th)

    def from_internal(self, t):
        return np.array([np.tanh(float(t))])

    @classmethod
    def initial_theta(cls, U):
        rho_s = stats.spearmanr(U[:, 0], U[:, 1]).statistic
        rho_s = np.clip(rho_s, -0.99, 0.99)
        return np.array([2.0 * np.sin(np.pi * rho_s / 6.0)])


class StudentTCopula(Copula):
    """Bivariate Student-t copula; fixed degrees of freedom, not estimated.

    Used as a heavy-tailed sampler and density; the CDF (a bivariate t
    integral) is deliberately not provided.
    """

    name = "studentt"

    def __init__(self, theta, d=2, df=4.0):
        if d != 2:
            raise UnsupportedOperationError("student-t copula implemented for d=2 only")
        self.df = float(df)
        if not self.df > 0:
            raise ParameterError(f"degrees of freedom must be positive, got {df}")
        super().__init__(theta, d=d)

    def _validate_theta(self):
        if not -1.0 < self.theta1 < 1.0:
            raise ParameterError(f"student-t requires -1 < theta < 1, got {self.theta1}")

    def with_theta(self, theta):
        return StudentTCopula(theta, d=self.d, df=self.df)

    def cdf(self, u):
        raise UnsupportedOperationError(
            "student-t copula CDF is not implemented (sampling/density only)"
        )

    def pdf(self, u):
        U, single = _check_points(u, self.d, open_cube=True)
        th, nu = self.theta1, self.df
        x = stats.t.ppf(U[:, 0], nu)
        y = stats.t.ppf(U[:, 1], nu)
        s = 1.0 - th * th
        log_num = (
            gammaln((nu + 2.0) / 2.0)
            + gammaln(nu / 2.0)
            - 2.0 * gammaln((nu + 1.0) / 2.0)
            - 0.5 * np.log(s)
            - (nu + 2.0) / 2.0 * np.log1p((x * x - 2.0 * th * x * y + y * y) / (nu * s))
        )
        log_den = (
            -(nu + 1.0) / 2.0 * (np.log1p(x * x / nu) + np.log1p(y * y / nu))
        )
        return _ret(np.exp(log_num - log_den), single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        rng = self._rng(seed)
        th, nu = self.theta1, self.df
        z = rng.standard_normal((n, 2))
        z2 = th * z[:, 0] + np.sqrt(1.0 - th * th) * z[:, 1]
        w = np.sqrt(rng.chisquare(nu, size=n) / nu)
        t1 = z[:, 0] / w
        t2 = z2 / w
        return np.column_stack([stats.t.cdf(t1, nu), stats.t.cdf(t2, nu)])

    def to_internal(self, theta=None):
        th = self.theta1 if theta is None else float(np.atleast_1d(theta)[0])
        return np.arctanh(th)

    def from_internal(self, t):
        return np.array([np.tanh(float(t))])

    @classmethod
    def initial_theta(cls, U):
        return GaussianCopula.initial_theta(U)


class IndependenceCopula(Copula):
    """C(u) = prod u_k; parameter-free."""

    name = "independence"
    n_params = 0

    def __init__(self, theta=(), d=2):
        super().__init__(np.empty(0), d=d)

    def with_theta(self, theta):
        return IndependenceCopula(d=self.d)

    def cdf(self, u):
        U, single = _check_points(u, self.d)
        return _ret(U.prod(axis=1), single)

    def log_grad_cdf(self, u, clamp=True):
        raise UsageError("independence copula has no parameter to differentiate")

    def pdf(self, u):
        U, single = _check_points(u, self.d, open_cube=True)
        return _ret(np.ones(U.shape[0]), single)

    def sample(self, n, seed=None):
        if n < 1:
            raise InputError("sample size must be positive")
        return self._rng(seed).random((n, self.d))


FAMILIES = {
    "clayton": ClaytonCopula,
    "gumbel": GumbelCopula,
    "frank": FrankCopula,
    "joe": JoeCopula,
    "gaussian": GaussianCopula,
    "studentt": StudentTCopula,
    "student-t": StudentTCopula,
    "independence": IndependenceCopula,
}


def resolve_family(family):
    """Map a family name or class to the copula class."""
    if isinstance(family, type) and issubclass(family, Copula):
        return family
    if isinstance(family, Copula):
        return type(family)
    key = str(family).lower()
    if key not in FAMILIES:
        raise ParameterError(f"unknown copula family {family!r}")
    return FAMILIES[key]


def make_copula(family, theta=None, d=2, df=4.0):
    """Construct a copula from a family name/class and parameter value."""
    cls = resolve_family(family)
    if cls is IndependenceCopula:
        return cls(d=d)
    if theta is None:
        raise ParameterError(f"{cls.name} requires a parameter value")
    if cls is StudentTCopula:
        return cls(theta, d=d, df=df)
    return cls(theta, d=d)
