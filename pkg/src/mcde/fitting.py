"""Parameter estimation: divergence minimisers, pseudo-MLE, and the
asymptotic sandwich covariance.

One-parameter families are fitted by bracketed derivative-free scalar
minimisation (Brent) in unconstrained internal coordinates, followed by a
root polish of the estimating-equation sum.  All fits consume
pseudo-observations only, so they are invariant under strictly increasing
marginal transformations of the raw data.
"""

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .divergences import (
    DivergenceSpec,
    loss_from_values,
    loss_gradient_from_values,
)
from .empirical import EmpiricalCopula, PseudoSample
from .errors import InputError, UsageError
from .families import make_copula, resolve_family

# Internal-coordinate magnitude cap for bracket expansion.
INTERNAL_CAP = 30.0


@dataclass
class FitResult:
    """Outcome of a single fit."""

    theta_hat: np.ndarray
    loss_at_opt: float
    iterations: int
    converged: bool
    gradient_norm: float
    method: dict

    def to_dict(self):
        return {
            "theta_hat": np.asarray(self.theta_hat).tolist(),
            "loss_at_opt": self.loss_at_opt,
            "iterations": self.iterations,
            "converged": self.converged,
            "gradient_norm": self.gradient_norm,
            "method": self.method,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _as_pseudo(sample):
    if isinstance(sample, PseudoSample):
        return sample
    U = np.asarray(sample, dtype=float)
    if U.ndim != 2:
        raise InputError("expected an (n, d) array of pseudo-observations")
    if (U <= 0).any() or (U >= 1).any():
        raise InputError(
            "values outside (0, 1): pass raw data through pseudo_observations() first"
        )
    return PseudoSample(U)


def _check_fittable(ps):
    if np.ptp(ps.U, axis=0).min() == 0:
        raise InputError("degenerate sample: a column is entirely tied")


def _minimize_internal(f, t0, cap=INTERNAL_CAP, max_iter=200, xtol=1e-10):
    """Bracketed Brent minimisation of f over the internal coordinate.

    Returns (t_hat, f_hat, n_evals, bracket_width).
    """
    evals = [0]

    def fc(t):
        evals[0] += 1
        return f(float(np.clip(t, -cap, cap)))

    t0 = float(np.clip(t0, -cap + 1e-9, cap - 1e-9))
    f0 = fc(t0)
    step = 0.5
    a, b = t0 - step, t0 + step
    fa, fb = fc(a), fc(b)
    # walk downhill with doubling steps until the middle point is lowest
    while not (f0 <= fa and f0 <= fb):
        if fa < fb:
            b, fb = t0, f0
            t0, f0 = a, fa
            a = t0 - step
            if a <= -cap:
                a, fa = -cap, fc(-cap)
                break
            fa = fc(a)
        else:
            a, fa = t0, f0
            t0, f0 = b, fb
            b = t0 + step
            if b >= cap:
                b, fb = cap, fc(cap)
                break
            fb = fc(b)
        step *= 2.0

    if f0 <= fa and f0 <= fb and a < t0 < b:
        res = minimize_scalar(
            fc, bracket=(a, t0, b), method="brent",
            options={"xtol": xtol, "maxiter": max_iter},
        )
        t_hat, f_hat = float(np.clip(res.x, -cap, cap)), float(res.fun)
    else:
        # monotone out to the cap: bounded search near the boundary
        lo, hi = (a, b)
        res = minimize_scalar(
            fc, bounds=(lo, hi), method="bounded",
            options={"xatol": xtol, "maxiter": max_iter},
        )
        t_hat, f_hat = float(res.x), float(res.fun)
    return t_hat, f_hat, evals[0], xtol


def _polish_root(g, t_hat, spans=(1e-6, 1e-4, 1e-2, 1e-1)):
    """Move t_hat to a sign change of the gradient g, if one brackets it."""
    g0 = g(t_hat)
    if g0 == 0.0 or not np.isfinite(g0):
        return t_hat
    for h in spans:
        lo, hi = t_hat - h, t_hat + h
        try:
            glo, ghi = g(lo), g(hi)
        except Exception:
            continue
        if np.isfinite(glo) and np.isfinite(ghi) and glo * ghi < 0:
            return float(brentq(g, lo, hi, xtol=1e-13))
    return t_hat


def fit_mcde(sample, family, spec, theta0=None, df=4.0, tol=1e-8, max_iter=200,
             empirical=None):
    """Minimum copula divergence fit of a one-parameter family.

    Parameters
    ----------
    sample : PseudoSample or (n, d) array of pseudo-observations
    family : family name or copula class
    spec : DivergenceSpec
    theta0 : optional warm start; defaults to a dependence-based initialiser
    empirical : optional precomputed EmpiricalCopula of ``sample``
    """
    if not isinstance(spec, DivergenceSpec):
        raise UsageError("spec must be a DivergenceSpec")
    ps = _as_pseudo(sample)
    _check_fittable(ps)
    if ps.n < ps.d + 1:
        raise InputError(f"need at least d+1 = {ps.d + 1} rows, got {ps.n}")
    cls = resolve_family(family)
    if theta0 is None:
        theta0 = cls.initial_theta(ps.U)
    proto = make_copula(cls, theta0, d=ps.d, df=df)
    ec = empirical if empirical is not None else EmpiricalCopula(ps)
    chat = ec.eval_at_sample()
    U = ps.U

    def objective(t):
        c = proto.with_theta(proto.from_internal(t))
        return loss_from_values(spec, c.cdf(U), chat)

    def grad_theta(t):
        c = proto.with_theta(proto.from_internal(t))
        return loss_gradient_from_values(spec, c.cdf(U), chat, c.log_grad_cdf(U))[0]

    t_hat, f_hat, n_evals, width = _minimize_internal(
        objective, proto.to_internal(theta0), max_iter=max_iter, xtol=tol * 1e-2
    )
    foc_tol = max(1e-8 * ps.n, 1e-12)
    if abs(grad_theta(t_hat)) > foc_tol and abs(t_hat) < INTERNAL_CAP:
        t_hat = _polish_root(grad_theta, t_hat)
        f_hat = objective(t_hat)
    gnorm = abs(grad_theta(t_hat))
    converged = gnorm <= max(1e-6 * ps.n, 1e-10) or abs(t_hat) >= INTERNAL_CAP - 1e-9
    return FitResult(
        theta_hat=proto.from_internal(t_hat),
        loss_at_opt=f_hat,
        iterations=n_evals,
        converged=bool(converged),
        gradient_norm=float(gnorm),
        method={"name": "mcde", "kind": spec.kind, "exponent": spec.exponent},
    )


def fit_mle(sample, family, theta0=None, df=4.0, tol=1e-8, max_iter=200):
    """Semiparametric pseudo-likelihood fit: minimise -sum log c(U_i)."""
    ps = _as_pseudo(sample)
    _check_fittable(ps)
    if ps.n < ps.d + 1:
        raise InputError(f"need at least d+1 = {ps.d + 1} rows, got {ps.n}")
    cls = resolve_family(family)
    if theta0 is None:
        theta0 = cls.initial_theta(ps.U)
    proto = make_copula(cls, theta0, d=ps.d, df=df)
    U = ps.U

    def objective(t):
        c = proto.with_theta(proto.from_internal(t))
        dens = c.pdf(U)
        if (dens <= 0).any() or np.isnan(dens).any():
            return np.inf
        return -np.log(dens).sum()

    t_hat, f_hat, n_evals, width = _minimize_internal(
        objective, proto.to_internal(theta0), max_iter=max_iter, xtol=tol * 1e-2
    )
    h = 1e-6
    gnorm = abs(objective(t_hat + h) - objective(t_hat - h)) / (2.0 * h)
    converged = np.isfinite(f_hat)
    return FitResult(
        theta_hat=proto.from_internal(t_hat),
        loss_at_opt=f_hat,
        iterations=n_evals,
        converged=bool(converged),
        gradient_norm=float(gnorm),
        method={"name": "pseudo-mle"},
    )


@dataclass
class CovarianceReport:
    """Sandwich covariance pieces for a divergence fit at a given exponent."""

    A: np.ndarray
    B: np.ndarray
    Sigma: np.ndarray
    x_exponent: float
    mc_samples: int
    b_stderr: np.ndarray

    def to_dict(self):
        return {
            "A": np.asarray(self.A).tolist(),
            "B": np.asarray(self.B).tolist(),
            "Sigma": np.asarray(self.Sigma).tolist(),
            "x_exponent": self.x_exponent,
            "mc_samples": self.mc_samples,
            "b_stderr": np.asarray(self.b_stderr).tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _coordinate_partials(copula, U, h=1e-5):
    """dC/du_j by central differences, shape (n, d)."""
    out = np.empty_like(U)
    for j in range(U.shape[1]):
        hj = np.minimum(h, np.minimum(U[:, j], 1.0 - U[:, j]) / 2.0)
        up = U.copy()
        up[:, j] = U[:, j] + hj
        dn = U.copy()
        dn[:, j] = U[:, j] - hj
        out[:, j] = (copula.cdf(up) - copula.cdf(dn)) / (2.0 * hj)
    return out


def _process_kernel(copula, U, V, cu, cv, kernel):
    """Covariance of the limiting empirical-copula process at (U_i, V_i).

    ``plain`` is the Brownian-sheet kernel C(u ^ v) - C(u) C(v) of the
    known-margins process.  ``rank`` subtracts the margin-estimation terms
    (partial-derivative weighted marginal bridges), which is the limit
    actually reached by the rank-based empirical copula; it is the default
    because it reproduces the simulated estimator variance.
    """
    K = copula.cdf(np.minimum(U, V)) - cu * cv
    if kernel == "plain":
        return K
    if kernel != "rank":
        raise UsageError(f"kernel must be 'rank' or 'plain', got {kernel!r}")
    d = U.shape[1]
    pu = _coordinate_partials(copula, U)
    pv = _coordinate_partials(copula, V)
    K = K.copy()
    for i in range(d):
        w = V.copy()
        w[:, i] = np.minimum(U[:, i], V[:, i])
        K -= pu[:, i] * (copula.cdf(w) - U[:, i] * cv)
    for j in range(d):
        w = U.copy()
        w[:, j] = np.minimum(U[:, j], V[:, j])
        K -= pv[:, j] * (copula.cdf(w) - cu * V[:, j])
    ones = np.ones_like(U)
    for i in range(d):
        for j in range(d):
            if i == j:
                m = np.minimum(U[:, i], V[:, i])
            else:
                w = ones.copy()
                w[:, i] = U[:, i]
                w[:, j] = V[:, j]
                m = copula.cdf(w)
            K += pu[:, i] * pv[:, j] * (m - U[:, i] * V[:, j])
    return K


def asymptotic_covariance(copula, x_exponent, mc=20_000, seed=None, kernel="rank"):
    """Monte Carlo sandwich covariance A^-1 B A^-1 at the given copula.

    A averages C^(x+1) g g' over draws from the copula (g the parameter
    gradient of log C); B streams independent draw pairs (u, v) through
    C(u)^x C(v)^x Cov(W(u), W(v)) g(u) g(v)', where W is the limit of the
    empirical copula process (see :func:`_process_kernel` for the two
    kernel choices).
    """
    rng = np.random.default_rng(seed)
    mc = int(mc)
    x = float(x_exponent)

    u = copula.sample(mc, seed=rng)
    cu = copula.cdf(u)
    gu = copula.log_grad_cdf(u)
    A = (cu ** (x + 1.0))[:, None, None] * gu[:, :, None] * gu[:, None, :]
    A = A.mean(axis=0)

    v = copula.sample(mc, seed=rng)
    cv = copula.cdf(v)
    gv = copula.log_grad_cdf(v)
    kern = (cu * cv) ** x * _process_kernel(copula, u, v, cu, cv, kernel)
    terms = kern[:, None, None] * gu[:, :, None] * gv[:, None, :]
    B = terms.mean(axis=0)
    b_stderr = terms.std(axis=0, ddof=1) / np.sqrt(mc)

    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > 1e12:
        raise np.linalg.LinAlgError(
            f"A matrix is numerically singular (condition number {cond:.3e})"
        )
    Ainv = np.linalg.inv(A)
    Sigma = Ainv @ B @ Ainv
    Sigma = (Sigma + Sigma.T) / 2.0
    return CovarianceReport(
        A=A, B=B, Sigma=Sigma, x_exponent=x, mc_samples=mc, b_stderr=b_stderr
    )
