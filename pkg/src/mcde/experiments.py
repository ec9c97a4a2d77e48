"""Scenario generators and the seeded repetition harness.

A scenario describes how raw data are produced: the dependence copula,
its true parameter, an optional contamination mixture, and optional
marginal transformations.  ``run_experiment`` repeats generation and
fitting under derived seeds and aggregates mean / stddev / bias / RMSE
per estimator.  Identical master seeds give bit-identical tables.
"""

import io
import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import ndtri

from .divergences import DivergenceSpec
from .empirical import EmpiricalCopula, pseudo_observations
from .errors import ConfigError
from .families import make_copula
from .fitting import fit_mcde, fit_mle
from .model_selection import CvConfig, cv_select_exponent

KINDS = (
    "CorrectClayton",
    "MixtureI",
    "MarginalII",
    "HighDimCorrect",
    "HighDimContaminated",
    "CvStudy",
)

_T_CONTAMINANT = {"family": "studentt", "theta": -0.5, "df": 5.0}


@dataclass(frozen=True)
class ScenarioConfig:
    """Data-generation recipe for one simulation scenario."""

    kind: str = "CorrectClayton"
    d: int = 2
    n: int = 200
    theta_true: float = 0.5
    pi: float = 0.0
    contaminant: dict = field(default_factory=dict)
    marginal: str = "uniform"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown scenario kind {self.kind!r}")
        if not 0.0 <= self.pi < 1.0:
            raise ConfigError(f"contamination rate must be in [0, 1), got {self.pi}")
        if self.n < 1 or self.d < 2:
            raise ConfigError("need n >= 1 and d >= 2")

    @classmethod
    def preset(cls, kind, **overrides):
        """Scenario with the conventional defaults for the given kind."""
        base = {
            "CorrectClayton": dict(d=2, n=200, theta_true=0.5, pi=0.0),
            "MixtureI": dict(d=2, n=200, theta_true=0.5, pi=0.025,
                             contaminant=dict(_T_CONTAMINANT)),
            "MarginalII": dict(d=2, n=200, theta_true=0.5, pi=0.05,
                               marginal="normal-mixture"),
            "HighDimCorrect": dict(d=20, n=2500, theta_true=2.0, pi=0.0),
            "HighDimContaminated": dict(d=20, n=2500, theta_true=2.0, pi=0.05,
                                        contaminant={"family": "independence"}),
            "CvStudy": dict(d=2, n=200, theta_true=0.5, pi=0.1,
                            contaminant=dict(_T_CONTAMINANT)),
        }[kind]
        base.update(overrides)
        return cls(kind=kind, **base)

    @classmethod
    def from_text(cls, text):
        """Parse a config from JSON or from key=value lines."""
        text = text.strip()
        if text.startswith("{"):
            payload = json.loads(text)
        else:
            payload = {}
            for line in text.splitlines():
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"expected key=value, got {line!r}")
                key, value = (s.strip() for s in line.split("=", 1))
                payload[key] = value
        kind = payload.pop("kind", "CorrectClayton")
        known = {"d": int, "n": int, "theta_true": float, "pi": float,
                 "seed": int, "marginal": str}
        kwargs = {}
        contaminant = payload.pop("contaminant", None)
        for key, value in payload.items():
            if key.startswith("contaminant_"):
                contaminant = contaminant or {}
                sub = key[len("contaminant_"):]
                contaminant[sub] = value if sub == "family" else float(value)
            elif key in known:
                kwargs[key] = known[key](value)
            else:
                raise ConfigError(f"unknown scenario field {key!r}")
        if contaminant:
            kwargs["contaminant"] = contaminant
        return cls.preset(kind, **kwargs)


def _normal_mixture_ppf(q, weight, shift=5.0):
    """Quantile of (1-w) N(0,1) + w N(shift, 1) by monotone bisection."""
    q = np.asarray(q, dtype=float)
    from scipy.special import ndtr

    lo = np.full(q.shape, -12.0)
    hi = np.full(q.shape, shift + 12.0)
    for _ in range(70):
        mid = (lo + hi) / 2.0
        cdf = (1.0 - weight) * ndtr(mid) + weight * ndtr(mid - shift)
        high = cdf >= q
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    return (lo + hi) / 2.0


def _contaminant_copula(cfg):
    spec = cfg.contaminant or dict(_T_CONTAMINANT)
    family = spec.get("family", "studentt")
    if family == "independence":
        return make_copula("independence", d=cfg.d)
    return make_copula(family, spec.get("theta", -0.5), d=cfg.d,
                       df=spec.get("df", 5.0))


def generate_dataset(cfg):
    """Raw n x d data matrix for the scenario, deterministic in cfg.seed."""
    ss = np.random.SeedSequence(cfg.seed)
    dep_rng, mask_rng, cont_rng = (np.random.default_rng(c) for c in ss.spawn(3))
    dependence = make_copula("clayton", cfg.theta_true, d=cfg.d)
    rows = dependence.sample(cfg.n, seed=dep_rng)
    if cfg.kind in ("MixtureI", "HighDimContaminated", "CvStudy") and cfg.pi > 0:
        mask = mask_rng.random(cfg.n) < cfg.pi
        contaminated = _contaminant_copula(cfg).sample(cfg.n, seed=cont_rng)
        rows = np.where(mask[:, None], contaminated, rows)
    if cfg.kind == "MarginalII" or cfg.marginal == "normal-mixture":
        out = np.empty_like(rows)
        out[:, 0] = _normal_mixture_ppf(rows[:, 0], weight=cfg.pi)
        for j in range(1, cfg.d):
            out[:, j] = ndtri(rows[:, j])
        return out
    return rows


# ---------------------------------------------------------------------------
# Estimators available to the harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EstimatorSpec:
    """A named fitting recipe applied to each replication's pseudo-sample."""

    name: str
    kind: str  # "mle" | "mcde" | "cv"
    divergence: str = "beta"
    exponent: float = 0.1
    cv_grid: tuple = (0.1, 0.25, 0.5, 1.0)
    cv_k: int = 5
    cv_anchor: float = 0.1

    def fit(self, ps, empirical, family="clayton", seed=0):
        if self.kind == "mle":
            return float(fit_mle(ps, family).theta_hat[0])
        if self.kind == "mcde":
            spec = DivergenceSpec(self.divergence, self.exponent)
            return float(fit_mcde(ps, family, spec, empirical=empirical).theta_hat[0])
        if self.kind == "cv":
            cfg = CvConfig(k=self.cv_k, grid=self.cv_grid,
                           anchor_beta=self.cv_anchor, seed=seed)
            cv = cv_select_exponent(ps, family, cfg)
            spec = DivergenceSpec("beta", cv.beta_opt)
            return float(fit_mcde(ps, family, spec, empirical=empirical).theta_hat[0])
        raise ConfigError(f"unknown estimator kind {self.kind!r}")


def mle_estimator(name="mle"):
    return EstimatorSpec(name=name, kind="mle")


def mcde_estimator(divergence, exponent, name=None):
    return EstimatorSpec(
        name=name or f"{divergence}-mcde({exponent:g})",
        kind="mcde", divergence=divergence, exponent=exponent,
    )


def cv_estimator(grid=(0.1, 0.25, 0.5, 1.0), k=5, anchor=0.1, name="opt-beta-mcde"):
    return EstimatorSpec(name=name, kind="cv", cv_grid=tuple(grid), cv_k=k,
                         cv_anchor=anchor)


@dataclass
class MetricsTable:
    """Per-estimator summary of a repetition study."""

    rows: list
    theta_true: float
    reps: int

    CSV_HEADER = "estimator,mean,stddev,bias,rmse,reps,failures"

    def row(self, name):
        for r in self.rows:
            if r["estimator"] == name:
                return r
        raise KeyError(name)

    def to_csv(self, path=None):
        buf = io.StringIO()
        buf.write(self.CSV_HEADER + "\n")
        for r in self.rows:
            buf.write(
                f"{r['estimator']},{r['mean']:.6f},{r['stddev']:.6f},"
                f"{r['bias']:.6f},{r['rmse']:.6f},{r['reps']},{r['failures']}\n"
            )
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def run_experiment(cfg, estimators, reps, master_seed=0, family="clayton",
                   label_suffix=""):
    """Repeat generate / rank / fit ``reps`` times and aggregate metrics.

    Failed fits are excluded from the aggregates and counted per estimator.
    """
    if reps < 2:
        raise ConfigError("need at least 2 repetitions")
    estimates = {est.name: [] for est in estimators}
    failures = {est.name: 0 for est in estimators}
    for r in range(reps):
        ss = np.random.SeedSequence(entropy=(int(master_seed), r))
        data_seed, est_seed = (int(s) for s in ss.generate_state(2, np.uint64))
        data = generate_dataset(replace(cfg, seed=data_seed))
        ps = pseudo_observations(data)
        ec = EmpiricalCopula(ps)
        for est in estimators:
            try:
                estimates[est.name].append(est.fit(ps, ec, family=family, seed=est_seed))
            except Exception:
                failures[est.name] += 1
    rows = []
    for est in estimators:
        vals = np.asarray(estimates[est.name])
        if vals.size == 0:
            raise ConfigError(f"estimator {est.name!r} failed in every repetition")
        rows.append({
            "estimator": est.name + label_suffix,
            "mean": float(vals.mean()),
            "stddev": float(vals.std(ddof=1)) if vals.size > 1 else 0.0,
            "bias": float(vals.mean() - cfg.theta_true),
            "rmse": float(np.sqrt(((vals - cfg.theta_true) ** 2).mean())),
            "reps": int(vals.size),
            "failures": failures[est.name],
        })
    return MetricsTable(rows=rows, theta_true=cfg.theta_true, reps=reps)
