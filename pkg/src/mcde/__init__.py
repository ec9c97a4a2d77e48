"""Rank-based robust copula fitting by minimum copula divergence.

The package fits one-parameter copula families to data through their
pseudo-observations only: either by minimising a power divergence between
the model copula and the empirical copula (robust to dependence
contamination), or by the semiparametric pseudo-likelihood baseline.
It also ships the asymptotic sandwich covariance, boundedness diagnostics
for the weighted log-CDF gradient, cross-validated exponent selection,
and a seeded simulation harness.
"""

from .divergences import (
    DivergenceSpec,
    LossValue,
    divergence_between,
    estimating_function,
    gamma_weight,
    loss,
    loss_gradient,
)
from .diagnostics import (
    BoundednessReport,
    boundary_limit_scan,
    power_bounded_sup,
    surface_grid,
)
from .empirical import EmpiricalCopula, PseudoSample, pseudo_observations
from .errors import (
    BoundaryError,
    ConfigError,
    InputError,
    ParameterError,
    UnsupportedOperationError,
    UsageError,
)
from .estimators import (
    CopulaDivergenceEstimator,
    ExponentSelectionCV,
    RankTransformer,
)
from .experiments import (
    EstimatorSpec,
    MetricsTable,
    ScenarioConfig,
    cv_estimator,
    generate_dataset,
    mcde_estimator,
    mle_estimator,
    run_experiment,
)
from .families import (
    ClaytonCopula,
    Copula,
    FrankCopula,
    GaussianCopula,
    GumbelCopula,
    IndependenceCopula,
    JoeCopula,
    StudentTCopula,
    frank_kendall_tau,
    joe_kendall_tau,
    make_copula,
)
from .fitting import CovarianceReport, FitResult, asymptotic_covariance, fit_mcde, fit_mle
from .model_selection import CvConfig, CvResult, cv_select_exponent

__version__ = "0.1.0"

__all__ = [
    "BoundaryError",
    "BoundednessReport",
    "ClaytonCopula",
    "ConfigError",
    "Copula",
    "CopulaDivergenceEstimator",
    "CovarianceReport",
    "CvConfig",
    "CvResult",
    "DivergenceSpec",
    "EmpiricalCopula",
    "EstimatorSpec",
    "ExponentSelectionCV",
    "FitResult",
    "FrankCopula",
    "GaussianCopula",
    "GumbelCopula",
    "IndependenceCopula",
    "InputError",
    "JoeCopula",
    "LossValue",
    "MetricsTable",
    "ParameterError",
    "PseudoSample",
    "RankTransformer",
    "ScenarioConfig",
    "StudentTCopula",
    "UnsupportedOperationError",
    "UsageError",
    "asymptotic_covariance",
    "boundary_limit_scan",
    "cv_estimator",
    "cv_select_exponent",
    "divergence_between",
    "estimating_function",
    "fit_mcde",
    "fit_mle",
    "frank_kendall_tau",
    "gamma_weight",
    "generate_dataset",
    "joe_kendall_tau",
    "loss",
    "loss_gradient",
    "make_copula",
    "mcde_estimator",
    "mle_estimator",
    "power_bounded_sup",
    "pseudo_observations",
    "run_experiment",
    "surface_grid",
]
