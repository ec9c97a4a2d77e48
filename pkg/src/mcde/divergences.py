"""Power-divergence losses between a parametric copula and the empirical copula.

Three loss families, indexed by a power exponent, are supported.  With
``C`` the model copula, ``Chat`` the empirical copula and ``U_i`` the
pseudo-observations, the losses are plain sums over the sample (no
integrals and no 1/n):

* alpha:  (1/(a(1-a))) sum_i { -C(U_i)^a Chat(U_i)^(1-a) + a C(U_i) }
* beta:   -(1/b) sum_i Chat(U_i) C(U_i)^b + (1/(b+1)) sum_i C(U_i)^(b+1)
* gamma:  -(1/g) [sum_i Chat(U_i) C(U_i)^g] / [sum_i C(U_i)^(g+1)]^(g/(g+1))

Each loss has a per-observation estimating function whose sample sum
vanishes at the minimiser; the gamma loss couples observations through a
global weight, so its exact gradient is the estimating-function sum times
a positive scalar (the two vanish together).
"""

from dataclasses import dataclass

import numpy as np

from .empirical import EmpiricalCopula, PseudoSample
from .errors import BoundaryError, UsageError
from .families import Copula

_KINDS = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class DivergenceSpec:
    """Divergence family ("alpha", "beta" or "gamma") plus its exponent."""

    kind: str
    exponent: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UsageError(f"divergence kind must be one of {_KINDS}, got {self.kind!r}")
        e = self.exponent
        if self.kind == "alpha" and e in (0.0, 1.0):
            raise UsageError("alpha exponent must differ from 0 and 1")
        if self.kind == "beta" and (e <= -1.0 or e == 0.0):
            raise UsageError("beta exponent must be > -1 and nonzero")
        if self.kind == "gamma" and (e <= -1.0 or e == 0.0):
            raise UsageError("gamma exponent must be > -1 and nonzero")

    @property
    def is_robust(self):
        """True in the exponent range with a bounded estimating function."""
        if self.kind == "alpha":
            return 0.0 < self.exponent < 1.0
        return self.exponent > 0.0


@dataclass(frozen=True)
class LossValue:
    value: float
    n: int


def _sample_values(sample, copula, empirical=None):
    if isinstance(sample, PseudoSample):
        ps = sample
    else:
        ps = PseudoSample(np.asarray(sample, dtype=float))
    ec = empirical if empirical is not None else EmpiricalCopula(ps)
    chat = ec.eval_at_sample()
    cvals = copula.cdf(ps.U)
    return ps, cvals, chat


def loss_from_values(spec, cvals, chat):
    """Loss evaluated from precomputed C(U_i) and Chat(U_i) vectors."""
    cvals = np.asarray(cvals, dtype=float)
    chat = np.asarray(chat, dtype=float)
    e = spec.exponent
    # C = 0 is harmless for positive powers (terms vanish); with a negative
    # exponent the sum is genuinely singular there
    if (cvals <= 0).any() and min(e, 1.0 if spec.kind == "alpha" else e) < 0:
        raise BoundaryError("model copula vanishes at a pseudo-observation")
    if spec.kind == "gamma" and not (cvals > 0).any():
        raise BoundaryError("model copula vanishes on the whole sample")
    if spec.kind == "alpha":
        return float(
            (-(cvals**e) * chat ** (1.0 - e) + e * cvals).sum() / (e * (1.0 - e))
        )
    if spec.kind == "beta":
        return float(
            -(chat * cvals**e).sum() / e + (cvals ** (e + 1.0)).sum() / (e + 1.0)
        )
    num = (chat * cvals**e).sum()
    den = (cvals * cvals**e).sum()
    return float(-num / (e * den ** (e / (e + 1.0))))


def loss(spec, sample, copula, empirical=None):
    """Divergence loss of ``copula`` against the sample's empirical copula."""
    ps, cvals, chat = _sample_values(sample, copula, empirical)
    return LossValue(value=loss_from_values(spec, cvals, chat), n=ps.n)


def gamma_weight_from_values(gamma, cvals, chat):
    cvals = np.asarray(cvals, dtype=float)
    # written as C * C^g so the ratio is exactly 1 when chat equals C
    den = (cvals * cvals**gamma).sum()
    if den == 0:
        raise BoundaryError("gamma weight denominator vanished")
    return float((np.asarray(chat) * cvals**gamma).sum() / den)


def gamma_weight(sample, copula, gamma, empirical=None):
    """Global scale weight: sum Chat C^g / sum C^(g+1).

    Converges to 1 in probability when the sample is generated by the
    model copula itself.
    """
    if gamma <= -1.0:
        raise UsageError("gamma weight requires exponent > -1")
    _, cvals, chat = _sample_values(sample, copula, empirical)
    return gamma_weight_from_values(gamma, cvals, chat)


def estimating_function(spec, u, chat_u, copula, w=None, clamp=True):
    """Per-observation estimating function, shape (n, m) (or (m,) for one point).

    ``chat_u`` holds the empirical-copula values at ``u``.  The gamma kind
    additionally needs the global weight ``w``.
    """
    if spec.kind == "gamma" and w is None:
        raise UsageError("gamma estimating function requires the global weight w")
    g = copula.log_grad_cdf(u, clamp=clamp)
    single = g.ndim == 1
    G = g[None, :] if single else g
    cvals = np.atleast_1d(copula.cdf(u))
    chat = np.broadcast_to(np.asarray(chat_u, dtype=float), cvals.shape)
    e = spec.exponent
    if spec.kind == "alpha":
        factor = cvals**e * (cvals ** (1.0 - e) - chat ** (1.0 - e)) / (1.0 - e)
    elif spec.kind == "beta":
        factor = cvals**e * (cvals - chat)
    else:
        factor = cvals**e * (w * cvals - chat)
    out = factor[:, None] * G
    return out[0] if single else out


def loss_gradient_from_values(spec, cvals, chat, grads):
    """Analytic gradient of the loss, shape (m,), from precomputed pieces."""
    cvals = np.asarray(cvals, dtype=float)
    chat = np.asarray(chat, dtype=float)
    e = spec.exponent
    if spec.kind == "alpha":
        factor = cvals**e * (cvals ** (1.0 - e) - chat ** (1.0 - e)) / (1.0 - e)
        return (factor[:, None] * grads).sum(axis=0)
    if spec.kind == "beta":
        factor = cvals**e * (cvals - chat)
        return (factor[:, None] * grads).sum(axis=0)
    den = (cvals * cvals**e).sum()
    w = (chat * cvals**e).sum() / den
    factor = cvals**e * (w * cvals - chat)
    # exact chain rule through the global weight: positive scalar times S-sum
    return den ** (-e / (e + 1.0)) * (factor[:, None] * grads).sum(axis=0)


def loss_gradient(spec, sample, copula, empirical=None):
    """Exact gradient of ``loss`` with respect to the copula parameters."""
    ps, cvals, chat = _sample_values(sample, copula, empirical)
    grads = copula.log_grad_cdf(ps.U)
    return loss_gradient_from_values(spec, cvals, chat, grads)


def _divergence_terms(spec, c0_vals, c1_vals, weights):
    c0 = np.asarray(c0_vals, dtype=float)
    c1 = np.asarray(c1_vals, dtype=float)
    e = spec.exponent
    if spec.kind == "alpha":
        ratio = c1 / c0
        core = c0 * (1.0 - ratio**e + e * (ratio - 1.0)) / (e * (1.0 - e))
        return float((weights * core).sum())
    if spec.kind == "beta":
        core = (
            c0 ** (e + 1.0) / (e * (e + 1.0))
            + c1 ** (e + 1.0) / (e + 1.0)
            - c0 * c1**e / e
        )
        return float((weights * core).sum())
    # cross-entropy of (C0, C1) minus the diagonal entropy of C0; the
    # diagonal term makes D(c, c) = 0 and keeps the functional nonnegative
    # (Hoelder), matching the gamma-entropy definition.
    i1 = float((weights * c0 * c1**e).sum())
    i2 = float((weights * c1 ** (e + 1.0)).sum())
    i0 = float((weights * c0 ** (e + 1.0)).sum())
    return -i1 / (e * i2 ** (e / (e + 1.0))) + i0 ** (1.0 / (e + 1.0)) / e


def divergence_between(spec, c0, c1, mc=100_000, seed=None):
    """Divergence D(C0, C1) integrated against the measure of C0.

    ``c0`` may be a parametric copula (Monte Carlo over ``mc`` draws) or an
    :class:`EmpiricalCopula` (exact sum over its atoms, each with mass
    1/(n+1)).  ``c1`` must be a parametric copula.
    """
    if not isinstance(c1, Copula):
        raise UsageError("c1 must be a parametric copula")
    if isinstance(c0, EmpiricalCopula):
        atoms = c0.sample.U
        c0_vals = c0.eval_at_sample()
        weights = np.full(c0.n, 1.0 / (c0.n + 1.0))
        c1_vals = c1.cdf(atoms)
    elif isinstance(c0, Copula):
        draws = c0.sample(int(mc), seed=seed)
        c0_vals = c0.cdf(draws)
        c1_vals = c1.cdf(draws)
        weights = np.full(draws.shape[0], 1.0 / draws.shape[0])
    else:
        raise UsageError("c0 must be a parametric copula or an EmpiricalCopula")
    return _divergence_terms(spec, c0_vals, c1_vals, weights)
