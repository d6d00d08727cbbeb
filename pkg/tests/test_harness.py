import dataclasses

import numpy as np
import pytest

from pairedfda.core import difference
from pairedfda.errors import CellError, PairedFdaError
from pairedfda.harness import (
    Method,
    apply_method,
    cell_table,
    run_cell,
    run_cell_multi,
    run_power_sweep,
    run_power_sweep_multi,
)
from pairedfda.nulltests import Alternative, PValueMethod
from pairedfda.simgen import SimConfig, generate_dataset, replicate_rng

FAST = dict(n=12, S=10, rho=0.5, K=20, preprocess="none")


class TestApplyMethod:
    def test_sdrt_records_zero_fraction(self):
        cfg = SimConfig(replicates=1, seed=51, **FAST)
        d = difference(generate_dataset(replicate_rng(51, 0), cfg))
        rep = apply_method(d, "sdrt")
        assert rep.statistic_name == "W+"
        assert rep.zero_fraction == 0.0

    def test_sign_methods(self):
        cfg = SimConfig(replicates=1, seed=52, **FAST)
        d = difference(generate_dataset(replicate_rng(52, 0), cfg))
        for m in ("fst-int", "fst-suff"):
            rep = apply_method(d, m)
            assert rep.statistic_name == "U+"
            assert rep.method is PValueMethod.EXACT

    def test_alternative_passed_through(self):
        cfg = SimConfig(replicates=1, seed=53, **FAST)
        d = difference(generate_dataset(replicate_rng(53, 0), cfg))
        rep = apply_method(d, Method.SDRT, Alternative.GREATER)
        assert rep.alternative is Alternative.GREATER


class TestRunCell:
    def test_alpha_one_rejects_everything(self):
        cfg = SimConfig(replicates=20, seed=54, **FAST)
        for m in Method:
            assert run_cell(cfg, m, alpha=1.0).rate == 1.0

    def test_single_replicate_rate_is_binary(self):
        cfg = SimConfig(replicates=1, seed=55, **FAST)
        assert run_cell(cfg, "sdrt", alpha=0.05).rate in (0.0, 1.0)

    def test_multi_matches_single(self):
        cfg = SimConfig(replicates=30, seed=56, **FAST)
        multi = run_cell_multi(cfg, ["sdrt", "fst-int", "fst-suff"], 0.05)
        for res in multi:
            solo = run_cell(cfg, res.method, 0.05)
            assert solo.rejections == res.rejections

    def test_stderr_formula(self):
        cfg = SimConfig(replicates=40, seed=57, **FAST)
        res = run_cell(cfg, "fst-int", alpha=0.3)
        assert res.rate == res.rejections / 40
        assert res.mc_stderr == pytest.approx(
            np.sqrt(res.rate * (1 - res.rate) / 40), abs=1e-15
        )

    def test_bad_alpha_rejected(self):
        cfg = SimConfig(replicates=1, seed=58, **FAST)
        with pytest.raises(PairedFdaError):
            run_cell(cfg, "sdrt", alpha=0.0)

    def test_failing_replicate_reports_index_and_seed(self):
        # Missing cells with preprocessing disabled fail inside difference().
        cfg = SimConfig(
            n=8, S=10, rho=0.5, K=10, replicates=3, seed=59,
            preprocess="none", missing_frac=0.2,
        )
        with pytest.raises(CellError) as err:
            run_cell(cfg, "sdrt", 0.05)
        assert err.value.replicate == 0
        assert err.value.seed == 59


class TestPowerSweep:
    def test_null_endpoint_matches_run_cell(self):
        cfg = SimConfig(replicates=25, seed=60, delta="linear", **FAST)
        sweep = run_power_sweep(cfg, "sdrt", [0.0, 1.0], alpha=0.05)
        solo = run_cell(dataclasses.replace(cfg, xi=0.0), "sdrt", 0.05)
        assert sweep[0].rejections == solo.rejections

    def test_xi_values_validated(self):
        cfg = SimConfig(replicates=1, seed=61, delta="linear", **FAST)
        with pytest.raises(PairedFdaError):
            run_power_sweep(cfg, "sdrt", [], 0.05)
        with pytest.raises(PairedFdaError):
            run_power_sweep(cfg, "sdrt", [2.0, 1.0], 0.05)

    def test_power_grows_with_strong_shift(self):
        cfg = SimConfig(
            n=40, S=15, rho=0.5, K=50, replicates=150, seed=62,
            delta="linear", preprocess="none",
        )
        sweep = run_power_sweep(cfg, "sdrt", [0.0, 3.0], alpha=0.05)
        assert sweep[1].rate > sweep[0].rate + 0.3
        assert sweep[1].rate > 0.8

    def test_multi_sweep_shape(self):
        cfg = SimConfig(replicates=5, seed=63, delta="parabolic", **FAST)
        out = run_power_sweep_multi(cfg, ["sdrt", "fst-int"], [0.5, 1.0], 0.05)
        assert len(out) == 2 and len(out[0]) == 2
        assert out[0][0].config.xi == 0.5
        assert out[1][1].method is Method.FST_INT

    def test_power_ordering_across_shift_and_size(self):
        """Strong shift at n=60 beats weak shift at n=15 for every method,
        and power is nondecreasing in n at a matched shift."""
        methods = ["sdrt", "fst-int", "fst-suff"]

        def rates(n, xi):
            cfg = SimConfig(
                n=n, S=15, rho=0.5, K=50, replicates=150, seed=65,
                delta="linear", xi=xi, preprocess="none",
            )
            return {r.method.value: r for r in run_cell_multi(cfg, methods, 0.05)}

        strong_big = rates(60, 3.0)
        weak_small = rates(15, 0.12)
        strong_small = rates(15, 3.0)
        for m in methods:
            assert strong_big[m].rate > weak_small[m].rate
            a, b = strong_small[m], strong_big[m]
            joint_se = np.sqrt(a.mc_stderr**2 + b.mc_stderr**2)
            assert b.rate >= a.rate - 2 * joint_se


class TestCellTable:
    def test_columns_and_determinism(self):
        cfg = SimConfig(replicates=10, seed=64, **FAST)
        res = run_cell_multi(cfg, ["sdrt", "fst-suff"], 0.05)
        t1 = cell_table(res)
        t2 = cell_table(run_cell_multi(cfg, ["sdrt", "fst-suff"], 0.05))
        assert t1 == t2
        header, *rows = t1.strip().splitlines()
        assert header == (
            "method,n,S,rho,dist,delta,xi,alpha,replicates,rejections,rate,stderr,seed"
        )
        assert len(rows) == 2
        first = rows[0].split(",")
        assert first[0] == "sdrt"
        assert first[1] == "12"
        assert first[-1] == "64"
