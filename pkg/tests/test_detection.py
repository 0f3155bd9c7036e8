"""Exact fixed-false-alarm miss computation and the Monte Carlo pipeline."""

import math

import numpy as np
import pytest
from scipy.stats import binom

from secquant import (
    AllocationResult,
    BscChannel,
    GaussianSensorModel,
    NetworkConfig,
    OperatingPoint,
    SensorSite,
    allocate,
    bsc_transform,
    exact_np_miss,
    kl_divergence,
    sample_trial_records,
    simulate_monte_carlo,
    stein_curve,
    unconstrained_design,
    unconstrained_optimum,
)
from secquant.detection import _np_components

import oracles


class TestExactMissSingleSymbol:
    def test_plain_threshold(self):
        point = exact_np_miss(OperatingPoint(0.3, 0.7), window=1, delta=0.3)
        assert point.miss == pytest.approx(0.3, abs=1e-15)

    def test_randomized_threshold(self):
        point = exact_np_miss(OperatingPoint(0.3, 0.7), window=1, delta=0.15)
        assert point.miss == pytest.approx(0.65, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            exact_np_miss(OperatingPoint(0.7, 0.3), 10, 0.1)
        with pytest.raises(ValueError):
            exact_np_miss(OperatingPoint(0.0, 0.7), 10, 0.1)
        with pytest.raises(ValueError):
            exact_np_miss(OperatingPoint(0.3, 0.7), 0, 0.1)
        with pytest.raises(ValueError):
            exact_np_miss(OperatingPoint(0.3, 0.7), 10, 0.6)


class TestFalseAlarmExactness:
    def test_randomization_pins_false_alarm(self):
        for window in (1, 7, 50, 200):
            for delta in (0.01, 0.05, 0.3):
                _, t, gamma = _np_components(0.3, 0.7, window, delta)
                ks = np.arange(window + 1)
                pmf = binom.pmf(ks, window, 0.3)
                fa = float(pmf[t + 1 :].sum() + gamma * pmf[t])
                assert math.log(fa) == pytest.approx(math.log(delta), abs=1e-12)


class TestAgainstIndependentSummation:
    def test_matches_oracle_log_miss(self):
        for x, y in ((0.3, 0.7), (0.4184, 0.7864), (0.1, 0.55)):
            for window in (5, 40, 133, 400):
                got = exact_np_miss(OperatingPoint(x, y), window, 0.01)
                want = oracles.np_log_miss(x, y, window, 0.01)
                assert got.log_miss == pytest.approx(want, rel=1e-12)

    def test_deep_windows_stay_representable(self):
        point = exact_np_miss(OperatingPoint(0.3, 0.7), window=10_000, delta=0.01)
        assert math.isfinite(point.log_miss)
        assert point.log_miss < -3000.0
        # the sqrt(V/T) backoff still costs ~5% at this window
        assert point.exponent == pytest.approx(
            kl_divergence(OperatingPoint(0.3, 0.7)), rel=0.08
        )


class TestExponentConvergence:
    def test_exponent_sequence_nondecreasing(self):
        points = stein_curve(OperatingPoint(0.3, 0.7), [50, 100, 200, 400], 0.01)
        exps = [p.exponent for p in points]
        assert all(b >= a - 1e-6 for a, b in zip(exps, exps[1:]))

    def test_local_slopes_approach_divergence(self):
        target = kl_divergence(OperatingPoint(0.3, 0.7))
        points = stein_curve(OperatingPoint(0.3, 0.7), [50, 100, 200, 400], 0.01)
        slopes = [p.local_slope for p in points]
        assert all(b >= a for a, b in zip(slopes, slopes[1:]))
        # frozen from the binomial oracle: the window-400 slope reaches
        # ~0.8932 of the divergence, inside the 15% band
        assert slopes[-1] == pytest.approx(0.302714, abs=1e-5)
        assert abs(slopes[-1] - target) / target < 0.15

    def test_diagonal_point_has_no_information(self):
        points = stein_curve(OperatingPoint(0.4, 0.4), [50, 100], 0.01)
        for p in points:
            assert p.exponent == pytest.approx(0.0, abs=1e-3)
            assert p.miss == pytest.approx(0.99, abs=1e-12)

    def test_delta_insensitivity_at_large_window(self):
        e1 = exact_np_miss(OperatingPoint(0.3, 0.7), 400, 0.01).exponent
        e2 = exact_np_miss(OperatingPoint(0.3, 0.7), 400, 0.02).exponent
        assert abs(e2 - e1) / e1 < 0.05

    def test_windows_must_ascend(self):
        with pytest.raises(ValueError):
            stein_curve(OperatingPoint(0.3, 0.7), [100, 50], 0.01)


def single_sensor_setup(rho_fc=0.0, rho_e=0.1, budget=math.inf):
    site = SensorSite(
        model=GaussianSensorModel(1.0, 1.0),
        fc_channel=BscChannel(rho_fc),
        eve_channel=BscChannel(rho_e),
    )
    config = NetworkConfig(sites=(site,), alpha_total=10.0)
    result = allocate(config)
    return site, config, result


class TestMonteCarlo:
    def test_single_sensor_matches_exact_binomial(self):
        site, config, result = single_sensor_setup()
        design = result.per_sensor[0].design
        fc_op = bsc_transform(design.op, site.fc_channel)
        exact = exact_np_miss(fc_op, window=20, delta=0.01)
        mc = simulate_monte_carlo(
            config, result, window=20, trials=200_000, seed=91
        )
        assert abs(mc.fc_miss_estimate - exact.miss) <= 3.0 * mc.fc_miss_se
        assert abs(mc.fc_fa_estimate - 0.01) <= 3.0 * mc.fc_fa_se

    def test_blind_designs_perform_at_chance(self):
        site, config, _ = single_sensor_setup()
        blind = allocate(NetworkConfig(sites=(site,), alpha_total=0.0))
        mc = simulate_monte_carlo(config, blind, window=10, trials=50_000, seed=5)
        assert abs(mc.fc_miss_estimate - 0.99) <= 3.0 * mc.fc_miss_se
        assert abs(mc.eve_miss_estimate - 0.99) <= 3.0 * mc.eve_miss_se

    def test_noisier_eve_misses_more(self):
        _, config_a, result_a = single_sensor_setup(rho_e=0.1)
        _, config_b, result_b = single_sensor_setup(rho_e=0.3)
        mc_a = simulate_monte_carlo(
            config_a, result_a, window=20, trials=50_000, seed=17
        )
        mc_b = simulate_monte_carlo(
            config_b, result_b, window=20, trials=50_000, seed=17
        )
        assert mc_b.eve_miss_estimate > mc_a.eve_miss_estimate

    def test_same_seed_is_bit_identical(self):
        _, config, result = single_sensor_setup()
        mc1 = simulate_monte_carlo(config, result, window=15, trials=30_000, seed=3)
        mc2 = simulate_monte_carlo(config, result, window=15, trials=30_000, seed=3)
        assert mc1 == mc2

    def test_trial_records_deterministic_and_shaped(self):
        site, config, result = single_sensor_setup()
        recs1 = sample_trial_records(config, result, 1, window=12, count=5, seed=3)
        recs2 = sample_trial_records(config, result, 1, window=12, count=5, seed=3)
        assert recs1 == recs2
        assert len(recs1) == 5
        for rec in recs1:
            assert rec.hypothesis == 1
            assert len(rec.sensor_bits) == 12
            assert len(rec.fc_bits) == 12
            assert len(rec.eve_bits) == 12
            assert set(rec.sensor_bits) <= {0, 1}

    def test_designs_must_match_config(self):
        site, config, result = single_sensor_setup()
        two = NetworkConfig(
            sites=(site, site), alpha_total=1.0
        )
        with pytest.raises(ValueError):
            simulate_monte_carlo(two, result, window=5, trials=10, seed=1)

    def test_validation(self):
        _, config, result = single_sensor_setup()
        with pytest.raises(ValueError):
            simulate_monte_carlo(config, result, window=0, trials=10, seed=1)
        with pytest.raises(ValueError):
            simulate_monte_carlo(config, result, window=5, trials=0, seed=1)
        with pytest.raises(ValueError):
            sample_trial_records(config, result, 2, window=5, count=1, seed=1)
