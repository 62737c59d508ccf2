import csv
import io as pyio

import numpy as np
import pytest

from ginidyn.backend.configfile import SimulateConfigFile
from ginidyn.core.dist import geometric
from ginidyn.core.dist import make_dist
from ginidyn.core.dist import uniform
from ginidyn.dynamics import trajectory as tested
from ginidyn.dynamics.models import ModelKind
from ginidyn.dynamics.models import ModelSpec
from ginidyn.dynamics.trajectory import SimConfig
from ginidyn.helpers.exceptions import DynamicsException
from ginidyn.helpers.exceptions import VerifierException

from ..conftest import shipped_config

IPP2 = ModelSpec(ModelKind.PERSUASION_POLARIZATION, k=2)
STICKY = ModelSpec(ModelKind.STICKY_DISPERSION, mu=0.7)
RICH = ModelSpec(ModelKind.RICH_BIASED)


def _nonincreasing(values, tol=1e-10):
    return all(b <= a + tol for a, b in zip(values, values[1:]))


def _nondecreasing(values, tol=1e-10):
    return all(b >= a - tol for a, b in zip(values, values[1:]))


class TestSimConfig:
    def test_defaults(self):
        cfg = SimConfig(trunc=10)
        assert cfg.dt == 0.01
        assert cfg.method == "rk4"
        assert cfg.checks == []
        assert cfg.n_steps == 1000

    @pytest.mark.parametrize(
        "t_end,dt,expected", [(1.0, 0.01, 100), (0.05, 0.02, 3), (0.0, 0.1, 0), (0.3, 0.1, 3)]
    )
    def test_n_steps(self, t_end, dt, expected):
        assert SimConfig(trunc=4, dt=dt, t_end=t_end).n_steps == expected

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"trunc": 1},
            {"trunc": 4, "dt": 0.0},
            {"trunc": 4, "t_end": -1.0},
            {"trunc": 4, "record_every": 0},
            {"trunc": 4, "method": "leapfrog"},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DynamicsException.InvalidConfigError):
            SimConfig(**kwargs)

    def test_unknown_check(self):
        with pytest.raises(VerifierException.UnknownCheckError):
            SimConfig(trunc=4, checks=["thm3"])

    def test_from_dict(self):
        cfg = SimConfig.from_dict({"trunc": 20, "dt": 0.005, "checks": ["thm2"]})
        assert cfg.trunc == 20
        assert cfg.dt == 0.005
        assert cfg.checks == ["thm2"]


class TestTrajectoryRecord:
    def test_columns(self):
        record = tested.TrajectoryRecord(["thm1"])
        assert record.columns == [
            "t",
            "mass",
            "mean",
            "gini",
            "w1_equil",
            "l1_dirac0",
            "tail_mass",
            "thm1_lhs",
            "thm1_rhs",
            "thm1_slack",
        ]

    def test_column(self):
        record = tested.TrajectoryRecord([])
        record.append([0.0, 1.0, 1.0, 0.5, 0.0, 1.0, 0.0])
        record.append([0.1, 1.0, 1.0, 0.4, 0.0, 1.0, 0.0])
        assert len(record) == 2
        assert record.column("gini") == [0.5, 0.4]
        with pytest.raises(KeyError):
            record.column("entropy")

    def test_failures(self):
        record = tested.TrajectoryRecord(["thm2"])
        record.append([0.0, 1.0, 1.0, 0.5, 0.0, 1.0, 0.0, 1.0, 2.0, 1.0])
        record.append([0.1, 1.0, 1.0, 0.5, 0.0, 1.0, 0.0, 2.0, 1.0, -1.0])
        record.append([0.2, 1.0, 1.0, 0.5, 0.0, 1.0, 0.0, None, None, None])
        assert record.failures() == {"thm2": 1}


class TestSimulate:
    def test_ipp_gini_decays(self):
        cfg = SimConfig(trunc=4, dt=0.01, t_end=20.0, record_every=10, checks=["thm1", "gini_minimizer"])
        record = tested.simulate(IPP2, uniform(4), cfg)
        gini = record.column("gini")
        assert len(record) == 201
        assert _nonincreasing(gini)
        assert gini[-1] < gini[0]
        assert all(m == pytest.approx(2.0, abs=1e-12) for m in record.column("mean"))
        assert all(m == pytest.approx(1.0, abs=1e-12) for m in record.column("mass"))
        assert record.failures() == {"thm1": 0, "gini_minimizer": 0}

    def test_ipp_converges_to_equilibrium(self):
        d0 = make_dist([0.2, 0.3, 0.3, 0.1, 0.1])
        cfg = SimConfig(trunc=4, dt=0.01, t_end=60.0, record_every=100)
        record = tested.simulate(IPP2, d0, cfg)
        assert _nonincreasing(record.column("gini"))
        assert record.column("gini")[-1] == pytest.approx(0.15, abs=1e-8)
        assert record.column("w1_equil")[-1] < 1e-8
        assert record.final_state.probs == pytest.approx([0.0, 0.4, 0.6, 0.0, 0.0], abs=1e-8)

    def test_shipped_ipp_full_horizon(self):
        config = SimulateConfigFile(shipped_config("simulate", "persuasion_polarization"))
        record = tested.simulate(config.model(), config.initial(), config.sim())
        gini = record.column("gini")
        assert not record.stopped_early
        assert record.column("t")[-1] == pytest.approx(200.0)
        assert _nonincreasing(gini)
        assert gini[-1] == pytest.approx(0.15, abs=1e-6)
        assert float(np.abs(record.final_state.probs - [0.0, 0.4, 0.6, 0.0, 0.0]).sum()) < 1e-5
        assert all(m == pytest.approx(1.6, abs=1e-9) for m in record.column("mean"))
        assert record.failures() == {"thm1": 0, "thm2": 0, "gini_minimizer": 0}

    def test_ipp_integer_mean_full_horizon(self):
        cfg = SimConfig(trunc=4, dt=0.01, t_end=200.0, record_every=100, checks=["thm1", "gini_minimizer"])
        record = tested.simulate(IPP2, uniform(4), cfg)
        gini = record.column("gini")
        assert record.column("t")[-1] == pytest.approx(200.0)
        assert _nonincreasing(gini)
        assert gini[-1] < 0.02
        assert record.column("w1_equil")[-1] < record.column("w1_equil")[0]
        assert all(m == pytest.approx(2.0, abs=1e-9) for m in record.column("mean"))
        assert record.failures() == {"thm1": 0, "gini_minimizer": 0}

    def test_sticky_converges_to_equilibrium(self):
        cfg = SimConfig(trunc=20, dt=0.01, t_end=100.0, record_every=50, checks=["thm1", "lemma_mu01"])
        record = tested.simulate(STICKY, make_dist([0.5, 0.3, 0.2]), cfg)
        final = record.final_state.probs
        assert float(np.abs(final[:2] - [0.3, 0.7]).sum() + final[2:].sum()) < 1e-6
        assert _nonincreasing(record.column("gini"))
        assert record.failures() == {"thm1": 0, "lemma_mu01": 0}

    def test_sticky_mean_mismatch(self):
        cfg = SimConfig(trunc=20, t_end=1.0)
        with pytest.raises(DynamicsException.InvalidInitialDatumError):
            tested.simulate(STICKY, make_dist([0.3, 0.2, 0.5]), cfg)

    def test_rich_biased_gini_grows(self):
        config = SimulateConfigFile(shipped_config("simulate", "rich_biased"))
        record = tested.simulate(config.model(), config.initial(), config.sim())
        assert _nondecreasing(record.column("gini"))
        assert record.column("gini")[-1] > record.column("gini")[0]
        assert record.failures() == {"thm2": 0}
        assert not record.stopped_early

    def test_rich_biased_tail_warning(self):
        cfg = SimConfig(trunc=5, dt=0.01, t_end=0.5)
        record = tested.simulate(RICH, geometric(1.0, 5), cfg)
        assert record.tail_warnings == [1]

    def test_rich_biased_ignores_convergence_stop(self):
        cfg = SimConfig(trunc=40, dt=0.01, t_end=1.0, stop_on_convergence=True, convergence_tol=1.0)
        record = tested.simulate(RICH, geometric(1.0, 40), cfg)
        assert not record.stopped_early
        assert record.column("t")[-1] == pytest.approx(1.0)

    def test_stop_on_convergence(self):
        cfg = SimConfig(
            trunc=20,
            dt=0.01,
            t_end=1000.0,
            record_every=100,
            stop_on_convergence=True,
            convergence_tol=1e-10,
        )
        record = tested.simulate(STICKY, make_dist([0.5, 0.3, 0.2]), cfg)
        assert record.stopped_early
        assert record.column("t")[-1] < 1000.0

    def test_datum_too_long(self):
        with pytest.raises(DynamicsException.InvalidInitialDatumError):
            tested.simulate(RICH, uniform(10), SimConfig(trunc=5))

    def test_truncation_mismatch(self):
        with pytest.raises(DynamicsException.TruncationMismatchError):
            tested.simulate(IPP2, uniform(3), SimConfig(trunc=6))

    def test_dt_too_large(self):
        cfg = SimConfig(trunc=20, dt=5.0, t_end=10.0, method="euler")
        with pytest.raises(DynamicsException.PositivityViolationError) as err:
            tested.simulate(STICKY, make_dist([0.5, 0.3, 0.2]), cfg)
        assert err.value.dbg_info["step"] == "1"
        assert err.value.dbg_info["time"] == "5.0"

    def test_mean_drift_reports_step(self):
        cfg = SimConfig(trunc=4, dt=0.01, t_end=1.0, tol_mean=-1.0)
        with pytest.raises(DynamicsException.MeanDriftError) as err:
            tested.simulate(IPP2, uniform(4), cfg)
        assert err.value.dbg_info["step"] == "1"
        assert err.value.dbg_info["time"] == "0.01"
        assert "drift" in err.value.dbg_info

    def test_zero_horizon(self):
        record = tested.simulate(IPP2, uniform(4), SimConfig(trunc=4, t_end=0.0))
        assert len(record) == 1
        assert record.final_state.probs == pytest.approx([0.2] * 5)

    def test_record_stride(self):
        cfg = SimConfig(trunc=4, dt=0.01, t_end=0.25, record_every=10)
        record = tested.simulate(IPP2, uniform(4), cfg)
        assert record.column("t") == pytest.approx([0.0, 0.1, 0.2, 0.25])

    def test_dirac0_rows(self):
        cfg = SimConfig(trunc=4, dt=0.1, t_end=0.2, record_every=1, checks=["thm2", "w1_dirac0"])
        record = tested.simulate(RICH, make_dist([1.0]), cfg)
        assert record.column("gini") == [0.0, 0.0, 0.0]
        assert record.column("thm2_slack") == [None, None, None]
        assert record.column("w1_dirac0_slack") == [0.0, 0.0, 0.0]


class TestOutput:
    @pytest.fixture
    def record(self):
        cfg = SimConfig(trunc=20, dt=0.01, t_end=0.2, record_every=10, checks=["thm1"])
        return tested.simulate(STICKY, make_dist([0.5, 0.3, 0.2]), cfg)

    def test_csv(self, record):
        fh = pyio.StringIO()
        record.write_csv(fh)
        rows = list(csv.reader(pyio.StringIO(fh.getvalue())))
        assert rows[0] == record.columns
        assert len(rows) == 4
        assert rows[1][0] == "0"
        assert float(rows[2][0]) == pytest.approx(0.1)
        assert float(rows[1][3]) == record.rows[0][3]

    def test_json(self, record):
        content = record.to_json()
        assert len(content) == 3
        assert set(content[0].keys()) == set(record.columns)
        assert content[-1]["t"] == pytest.approx(0.2)
