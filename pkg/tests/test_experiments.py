import numpy as np
import pytest

from mcde.empirical import pseudo_observations
from mcde.errors import ConfigError
from mcde.experiments import (
    EstimatorSpec,
    ScenarioConfig,
    generate_dataset,
    mcde_estimator,
    mle_estimator,
    run_experiment,
)


def test_scenario_validation():
    with pytest.raises(ConfigError):
        ScenarioConfig(kind="Unknown")
    with pytest.raises(ConfigError):
        ScenarioConfig(pi=1.0)
    with pytest.raises(ConfigError):
        ScenarioConfig(d=1)


def test_presets_match_conventions():
    t2 = ScenarioConfig.preset("CorrectClayton")
    assert (t2.n, t2.d, t2.theta_true, t2.pi) == (200, 2, 0.5, 0.0)
    t3 = ScenarioConfig.preset("MixtureI")
    assert t3.pi == 0.025
    assert t3.contaminant == {"family": "studentt", "theta": -0.5, "df": 5.0}
    t4 = ScenarioConfig.preset("HighDimContaminated")
    assert (t4.d, t4.n, t4.theta_true, t4.pi) == (20, 2500, 2.0, 0.05)
    assert t4.contaminant == {"family": "independence"}
    t5 = ScenarioConfig.preset("CvStudy")
    assert t5.pi == 0.1


def test_from_text_key_value():
    cfg = ScenarioConfig.from_text("kind=MixtureI\nn=500\npi=0.05\nseed=3\n")
    assert cfg.kind == "MixtureI" and cfg.n == 500 and cfg.pi == 0.05 and cfg.seed == 3


def test_from_text_json():
    cfg = ScenarioConfig.from_text('{"kind": "HighDimCorrect", "d": 10, "n": 100}')
    assert cfg.kind == "HighDimCorrect" and cfg.d == 10 and cfg.n == 100


def test_from_text_contaminant_fields():
    cfg = ScenarioConfig.from_text(
        "kind=MixtureI\ncontaminant_family=studentt\ncontaminant_theta=-0.3\n"
        "contaminant_df=4\n"
    )
    assert cfg.contaminant == {"family": "studentt", "theta": -0.3, "df": 4.0}


def test_from_text_unknown_key():
    with pytest.raises(ConfigError):
        ScenarioConfig.from_text("kind=MixtureI\nbogus=1\n")


def test_generate_deterministic():
    cfg = ScenarioConfig.preset("MixtureI", seed=11)
    assert np.array_equal(generate_dataset(cfg), generate_dataset(cfg))


def test_mixture_with_zero_rate_equals_clean_stream():
    clean = ScenarioConfig.preset("CorrectClayton", seed=21)
    mixed = ScenarioConfig.preset("MixtureI", pi=0.0, seed=21)
    assert np.array_equal(generate_dataset(clean), generate_dataset(mixed))


def test_marginal_scenario_rank_invariance():
    cfg = ScenarioConfig.preset("MarginalII", seed=31)
    pushed = generate_dataset(cfg)
    clean = generate_dataset(ScenarioConfig.preset("CorrectClayton", seed=31))
    assert np.array_equal(pseudo_observations(pushed).U,
                          pseudo_observations(clean).U)
    # the pushed first margin really is on the mixture scale
    assert pushed[:, 0].max() > 3.0


def test_mixture_rows_are_replaced():
    cfg = ScenarioConfig.preset("MixtureI", pi=0.5, seed=41, n=2000)
    mixed = generate_dataset(cfg)
    clean = generate_dataset(ScenarioConfig.preset("MixtureI", pi=0.0, seed=41, n=2000))
    frac = (mixed != clean).any(axis=1).mean()
    assert 0.45 < frac < 0.55


def test_run_experiment_deterministic_and_metrics_identity():
    cfg = ScenarioConfig.preset("CorrectClayton", n=120)
    ests = (mle_estimator(), mcde_estimator("beta", 0.1))
    a = run_experiment(cfg, ests, reps=10, master_seed=5)
    b = run_experiment(cfg, ests, reps=10, master_seed=5)
    assert a.rows == b.rows
    for row in a.rows:
        lhs = row["rmse"] ** 2
        rhs = row["bias"] ** 2 + row["stddev"] ** 2 * (row["reps"] - 1) / row["reps"]
        assert lhs == pytest.approx(rhs, rel=1e-9)


def test_metrics_csv_format(tmp_path):
    cfg = ScenarioConfig.preset("CorrectClayton", n=80)
    table = run_experiment(cfg, (mle_estimator(),), reps=5, master_seed=2)
    text = table.to_csv(tmp_path / "m.csv")
    lines = text.strip().splitlines()
    assert lines[0] == "estimator,mean,stddev,bias,rmse,reps,failures"
    assert lines[1].startswith("mle,")
    assert (tmp_path / "m.csv").read_text() == text


class _FlakyEstimator(EstimatorSpec):
    def fit(self, ps, empirical, family="clayton", seed=0):
        if ps.U[0, 0] > 0.5:
            raise RuntimeError("synthetic failure")
        return super().fit(ps, empirical, family=family, seed=seed)


def test_failed_reps_are_counted_not_dropped_silently():
    cfg = ScenarioConfig.preset("CorrectClayton", n=100)
    flaky = _FlakyEstimator(name="flaky", kind="mcde", divergence="beta", exponent=0.1)
    table = run_experiment(cfg, (flaky,), reps=12, master_seed=8)
    row = table.row("flaky")
    assert row["failures"] > 0
    assert row["reps"] + row["failures"] == 12


def test_mixture_robustness_ordering_at_heavy_contamination():
    # at a 10% contamination rate every small-exponent divergence fit beats
    # the pseudo-likelihood on both bias and RMSE
    cfg = ScenarioConfig.preset("MixtureI", pi=0.1)
    ests = (mle_estimator(), mcde_estimator("alpha", 0.1),
            mcde_estimator("beta", 0.1), mcde_estimator("gamma", 0.1))
    table = run_experiment(cfg, ests, reps=100, master_seed=1729)
    mle = table.row("mle")
    for name in ("alpha-mcde(0.1)", "beta-mcde(0.1)", "gamma-mcde(0.1)"):
        row = table.row(name)
        assert row["rmse"] < mle["rmse"], name
        assert abs(row["bias"]) < abs(mle["bias"]), name


def test_reps_guard():
    with pytest.raises(ConfigError):
        run_experiment(ScenarioConfig.preset("CorrectClayton"), (mle_estimator(),),
                       reps=1)
