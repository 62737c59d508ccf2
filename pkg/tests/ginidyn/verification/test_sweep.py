import pytest

from ginidyn.backend.configfile import VerifyConfigFile
from ginidyn.helpers.exceptions import VerifierException
from ginidyn.verification import sweep as tested
from ginidyn.verification.bounds import CHECKS
from ginidyn.verification.sweep import SweepConfig

from ..conftest import shipped_config

GRID = [0.3, 0.5, 1, 1.6, 2, 2.7]


class TestSweepConfig:
    def test_defaults(self):
        cfg = SweepConfig(GRID, 50, 10)
        assert cfg.checks == list(CHECKS)
        assert cfg.workers == 1
        assert cfg.corrupt is None

    @pytest.mark.parametrize("grid", [[0.0], [-0.5], [50.0], [0.3, 60.0]])
    def test_infeasible_grid(self, grid):
        with pytest.raises(VerifierException.InfeasibleMeanError):
            SweepConfig(grid, 50, 10)

    @pytest.mark.parametrize("kwargs", [{"checks": ["thm9"]}, {"corrupt": "thm9"}])
    def test_unknown_check(self, kwargs):
        with pytest.raises(VerifierException.UnknownCheckError):
            SweepConfig(GRID, 50, 10, **kwargs)

    def test_to_dict(self):
        content = SweepConfig([1.5], 10, 3, seed=4, checks=["thm1"]).to_dict()
        assert content == {
            "mu_grid": [1.5],
            "trunc": 10,
            "n_samples": 3,
            "seed": 4,
            "checks": ["thm1"],
            "equilibrium_only": False,
        }


def test_small_sweep_has_no_failure():
    report = tested.sweep(SweepConfig(GRID, 50, 30))
    assert not report.failed
    summaries = report.summaries
    assert list(summaries) == list(CHECKS)
    for summary in summaries.values():
        assert summary.count + summary.skipped == 30 * len(GRID)
        assert summary.failures == 0
    assert summaries["weak_bound"].count == 60
    assert summaries["prop2_w1_upper"].count == 120
    assert summaries["lemma_mu01"].count == 60
    assert summaries["thm2"].skipped == 0


def test_acceptance_sweep():
    config = VerifyConfigFile(shipped_config("verify", "default"))
    report = tested.sweep(config.sweep_config())
    assert report.failures == 0
    assert all(s.count + s.skipped == 6000 for s in report.summaries.values())


def test_empty_sweep():
    report = tested.sweep(SweepConfig(GRID, 50, 0))
    assert report.summaries == {}
    assert report.to_json() == {}
    assert not report.failed


def test_equilibrium_only():
    report = tested.sweep(SweepConfig(GRID, 50, 1, equilibrium_only=True))
    summaries = report.summaries
    assert summaries["thm1"].count == len(GRID)
    for name in ("thm1", "lemma_mu01", "gini_minimizer", "prop2_gini_lower", "prop2_w1_upper"):
        assert abs(summaries[name].min_slack) <= 1e-12, name
    assert len(summaries["thm1"].witnesses) == 5


def test_witnesses():
    report = tested.sweep(SweepConfig([1.6], 10, 1, equilibrium_only=True, max_witnesses=0))
    assert report.summaries["thm1"].witnesses == []
    report = tested.sweep(SweepConfig([1.6], 10, 1, equilibrium_only=True, checks=["thm1"]))
    (witness,) = report.summaries["thm1"].witnesses
    assert witness["mu"] == 1.6
    assert witness["dist"]["trunc"] == 10
    assert witness["dist"]["probs"][1] == pytest.approx(0.4)


def test_seeds_are_reproducible():
    cfg = SweepConfig([0.5, 2.7], 30, 20, seed=42)
    assert tested.sweep(cfg).to_json() == tested.sweep(cfg).to_json()


def test_workers_do_not_change_results():
    serial = tested.sweep(SweepConfig([0.5, 1.6, 2], 20, 15, seed=7))
    parallel = tested.sweep(SweepConfig([0.5, 1.6, 2], 20, 15, seed=7, workers=2))
    assert serial.to_json() == parallel.to_json()


def test_corrupted_check_fails():
    report = tested.sweep(SweepConfig([1.6, 2.7], 30, 20, corrupt="thm1"))
    summaries = report.summaries
    assert report.failed
    assert summaries["thm1"].failures > 0
    assert all(s.failures == 0 for name, s in summaries.items() if name != "thm1")


def test_report_json():
    report = tested.sweep(SweepConfig([0.5], 10, 5, checks=["thm2", "weak_bound"]))
    content = report.to_json()
    assert list(content) == ["thm2", "weak_bound"]
    assert content["thm2"]["count"] == 5
    assert content["weak_bound"] == {
        "count": 0,
        "failures": 0,
        "skipped": 5,
        "min_slack": None,
        "witnesses": [],
    }
