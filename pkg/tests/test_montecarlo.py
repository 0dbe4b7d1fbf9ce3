import math
import unittest

import numpy as np

from common.exceptions import GroupingException, InvalidParameterException
from common.models import CountsRecord, Quantity
from sqrac.montecarlo import (
    SETTINGS_PER_MEASUREMENT,
    build_schedule,
    calibrated_pair_rate,
    estimate_sd,
    reconstruct,
    simulate_counts,
    spawn_seeds,
    trial_probabilities,
)
from sqrac.protocol import ProtocolParams, p_ab_closed, p_ac_closed

PARAMS = ProtocolParams.unbiased(math.cos(math.radians(32)), math.cos(math.radians(32)))


class TestSchedule(unittest.TestCase):
    def test_trial_counts(self):
        p_ab_schedule = build_schedule(Quantity.P_AB, PARAMS)
        p_ac_schedule = build_schedule(Quantity.P_AC, PARAMS)
        self.assertEqual(32, p_ab_schedule.trial_count)
        self.assertEqual(64, p_ac_schedule.trial_count)
        # Charlie follows Bob's setting when only P_AB is measured
        self.assertTrue(all(trial.y == trial.z for trial in p_ab_schedule.trials))

    def test_plate_angles(self):
        schedule = build_schedule(Quantity.P_AC, PARAMS)
        for trial in schedule.trials:
            for angle in (trial.alice_plate, trial.bob_plate, trial.charlie_plate):
                self.assertGreater(angle, -math.pi / 4)
                self.assertLessEqual(angle, math.pi / 4 + 1e-12)

    def test_calibrated_pair_rate(self):
        self.assertAlmostEqual(400000 / (SETTINGS_PER_MEASUREMENT * 4), calibrated_pair_rate(400000, 4), places=9)
        schedule = build_schedule(Quantity.P_AB, PARAMS, duration=2.0, sub_windows=10)
        self.assertEqual(2.0, schedule.duration)
        self.assertEqual(10, schedule.sub_windows)

    def test_probabilities_per_setting_sum_to_one(self):
        schedule = build_schedule(Quantity.P_AC, PARAMS)
        probabilities = trial_probabilities(schedule, PARAMS)
        for x in (0, 1):
            for y in (0, 1):
                for z in (0, 1):
                    mask = [trial.x == x and trial.y == y and trial.z == z for trial in schedule.trials]
                    self.assertAlmostEqual(1.0, probabilities[mask].sum(), places=12)


class TestSimulation(unittest.TestCase):
    def test_reproducible(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS, pair_rate=1000.0)
        first = simulate_counts(schedule, PARAMS, seed=5)
        second = simulate_counts(schedule, PARAMS, seed=5)
        other = simulate_counts(schedule, PARAMS, seed=6)
        np.testing.assert_array_equal(first.sub_counts, second.sub_counts)
        self.assertFalse(np.array_equal(first.sub_counts, other.sub_counts))
        self.assertEqual(estimate_sd(first).sd, estimate_sd(second).sd)

    def test_spawn_seeds(self):
        seeds = spawn_seeds(42, 5)
        self.assertEqual(seeds, spawn_seeds(42, 5))
        self.assertEqual(5, len(set(seeds)))

    def test_zero_rate(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS, pair_rate=0.0)
        record = simulate_counts(schedule, PARAMS, seed=1)
        self.assertEqual(0, record.total)
        with self.assertRaises(GroupingException):
            reconstruct(record)

    def test_estimate_matches_theory(self):
        for quantity, theory in ((Quantity.P_AB, p_ab_closed(PARAMS)), (Quantity.P_AC, p_ac_closed(PARAMS))):
            schedule = build_schedule(quantity, PARAMS, pair_rate=calibrated_pair_rate(400000, 4), duration=4.0)
            report = estimate_sd(simulate_counts(schedule, PARAMS, seed=2024))
            self.assertGreaterEqual(report.sd, 3e-4)
            self.assertLessEqual(report.sd, 3e-3)
            self.assertAlmostEqual(theory, report.estimate, delta=5 * report.sd)
            self.assertEqual(4, len(report.setting_sds))

    def test_estimates_are_unbiased(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS, pair_rate=calibrated_pair_rate(400000, 4), duration=4.0)
        estimates = np.array([reconstruct(simulate_counts(schedule, PARAMS, seed)) for seed in spawn_seeds(7, 200)])
        standard_error = np.std(estimates, ddof=1) / math.sqrt(len(estimates))
        self.assertLessEqual(abs(np.mean(estimates) - p_ab_closed(PARAMS)), 3 * standard_error)

    def test_sd_shrinks_with_duration(self):
        pair_rate = calibrated_pair_rate(400000, 4)
        short = build_schedule(Quantity.P_AB, PARAMS, pair_rate=pair_rate, duration=4.0)
        long = build_schedule(Quantity.P_AB, PARAMS, pair_rate=pair_rate, duration=16.0)
        ratio = estimate_sd(simulate_counts(short, PARAMS, seed=3)).sd / estimate_sd(simulate_counts(long, PARAMS, seed=3)).sd
        self.assertGreater(ratio, 1.6)
        self.assertLess(ratio, 2.5)


class TestUncertainty(unittest.TestCase):
    def test_constant_counts_have_no_spread(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS)
        record = CountsRecord(schedule=schedule, sub_counts=np.full((32, 50), 10))
        report = estimate_sd(record)
        self.assertEqual(0.0, report.sd)
        self.assertAlmostEqual(0.5, report.estimate, places=12)

    def test_too_few_sub_windows(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS, sub_windows=10)
        record = CountsRecord(schedule=schedule, sub_counts=np.ones((32, 10)))
        with self.assertRaises(GroupingException):
            estimate_sd(record, groups=50)
        self.assertEqual(0.5, estimate_sd(record, groups=5).estimate)

    def test_counts_record_validation(self):
        schedule = build_schedule(Quantity.P_AB, PARAMS)
        with self.assertRaises(InvalidParameterException):
            CountsRecord(schedule=schedule, sub_counts=np.ones((31, 50)))
        with self.assertRaises(InvalidParameterException):
            CountsRecord(schedule=schedule, sub_counts=-np.ones((32, 50)))
