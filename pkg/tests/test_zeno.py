import math

import numpy as np
import pytest

from commonbath import (
    ModelParams,
    ZenoSchedule,
    effective_decay_rate,
    survival_probability,
    zeno_concurrence,
    zeno_survival,
    zero_crossings,
)


class TestZenoSchedule:
    def test_validation(self):
        with pytest.raises(ValueError):
            ZenoSchedule(interval_T=0.0, count_N=3)
        with pytest.raises(ValueError):
            ZenoSchedule(interval_T=1.0, count_N=0)
        assert ZenoSchedule(interval_T=0.5, count_N=4).total_time == 2.0


class TestEffectiveDecayRate:
    def test_short_interval_rate_is_linear_in_t(self):
        # quadratic short-time decay makes Gamma_z ~ n R^2 T
        params = ModelParams(n=4, R=0.1)
        gamma = effective_decay_rate(params, 0.01)
        assert gamma == pytest.approx(4e-4, rel=0.05)

    def test_rate_vanishes_with_the_interval(self):
        params = ModelParams(n=4, R=0.1)
        rates = [effective_decay_rate(params, t) for t in (0.1, 0.01, 0.001)]
        assert rates[0] > rates[1] > rates[2] > 0.0

    def test_rate_over_interval_approaches_the_golden_rule_slope(self):
        params = ModelParams(n=4, R=0.1)
        target = 4 * 0.01
        for t in (0.01, 0.001):
            assert effective_decay_rate(params, t) / t == pytest.approx(target, rel=0.05)

    def test_measuring_on_a_node_saturates(self):
        params = ModelParams(n=4, R=10.0)
        t1 = zero_crossings(params, 1)[0]
        assert effective_decay_rate(params, t1) == math.inf

    def test_rejects_bad_interval(self):
        params = ModelParams(n=4, R=0.1)
        with pytest.raises(ValueError):
            effective_decay_rate(params, 0.0)
        with pytest.raises(ValueError):
            effective_decay_rate(params, -2.0)


class TestZenoSurvival:
    def test_single_measurement_is_the_free_probability(self):
        params = ModelParams(n=4, R=0.1)
        for t in (0.5, 2.0, 7.0, 25.0):
            got = zeno_survival(params, ZenoSchedule(interval_T=t, count_N=1))
            assert got == pytest.approx(survival_probability(params, t), abs=1e-12)

    @pytest.mark.parametrize("total", [5.0, 25.0])
    def test_shorter_intervals_protect_more(self, total):
        # fixed total time, intervals 5 > 1 > 0.1: survival must rise
        params = ModelParams(n=4, R=0.1)
        keep = []
        for t in (5.0, 1.0, 0.1):
            n_meas = round(total / t)
            keep.append(zeno_survival(params, ZenoSchedule(interval_T=t, count_N=n_meas)))
        assert keep[0] < keep[1] < keep[2]

    def test_frequent_checks_freeze_the_state(self):
        params = ModelParams(n=4, R=0.1)
        total = 5.0
        survivals = []
        for t in (0.05, 0.005, 0.0005):
            n_meas = round(total / t)
            survivals.append(zeno_survival(params, ZenoSchedule(interval_T=t, count_N=n_meas)))
        assert survivals[-1] > 0.999
        assert survivals[0] < survivals[1] < survivals[2]

    def test_node_measurement_kills_the_state(self):
        params = ModelParams(n=4, R=10.0)
        t1 = zero_crossings(params, 1)[0]
        schedule = ZenoSchedule(interval_T=t1, count_N=3)
        assert zeno_survival(params, schedule) == 0.0
        assert zeno_concurrence(params, schedule) == 0.0

    def test_matches_the_rate_form(self):
        params = ModelParams(n=6, R=0.2)
        schedule = ZenoSchedule(interval_T=0.7, count_N=9)
        gamma = effective_decay_rate(params, 0.7)
        assert zeno_survival(params, schedule) == pytest.approx(
            math.exp(-gamma * schedule.total_time), rel=1e-12)


class TestZenoConcurrence:
    def test_exact_proportionality_to_survival(self):
        params = ModelParams(n=8, R=0.3)
        for t, n_meas in ((0.3, 2), (1.1, 7), (4.0, 1)):
            schedule = ZenoSchedule(interval_T=t, count_N=n_meas)
            assert zeno_concurrence(params, schedule) == pytest.approx(
                0.25 * zeno_survival(params, schedule), abs=1e-15)

    def test_frequent_checks_preserve_the_initial_bond(self):
        params = ModelParams(n=4, R=0.1)
        schedule = ZenoSchedule(interval_T=0.0005, count_N=10_000)
        assert zeno_concurrence(params, schedule) == pytest.approx(0.5, abs=1e-3)

    def test_single_check_at_the_end_reduces_to_free_decay(self):
        params = ModelParams(n=4, R=0.1)
        t = 25.0
        schedule = ZenoSchedule(interval_T=t, count_N=1)
        assert zeno_concurrence(params, schedule) == pytest.approx(
            0.5 * survival_probability(params, t), abs=1e-12)

    def test_comparison_with_free_decay_is_data_not_dogma(self):
        # at long intervals the protected value can fall on either side of
        # the free curve; just require both to be well defined
        params = ModelParams(n=4, R=0.1)
        schedule = ZenoSchedule(interval_T=5.0, count_N=5)
        protected = zeno_concurrence(params, schedule)
        free = 0.5 * survival_probability(params, 25.0)
        assert np.isfinite(protected) and np.isfinite(free)
        assert protected >= 0.0 and free >= 0.0
