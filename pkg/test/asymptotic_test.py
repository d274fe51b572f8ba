# -*- coding: utf-8 -*-

#
# Standard libraries
#

import unittest

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.asymptotic import (
    asym_for_model,
    asym_full,
    asym_independent,
    asym_semi,
    asymptotic_consistency,
    coding_gain,
    diversity_order,
    g0,
    log_log_slope,
    power_allocation_bound,
    power_allocation_factor,
    rate_for_target_outage,
    snr_for_target_outage,
    spatial_correlation_factor,
    unified_asymptote,
)
from mimo_outage.errors import ConfigError
from mimo_outage.model import ChannelScenario, EigenSpectrum, Method, Model, SystemConfig


class KernelValueTest(unittest.TestCase):

    def test_siso(self):
        """
        The SISO asymptote is (2^R - 1) / rho
        """
        cfg = SystemConfig(1, 1, 2.0, 30.0)

        result = asym_independent(cfg)

        self.assertAlmostEqual(1.0, result.probability / (3.0 / 1000.0), places=10)
        self.assertIs(Method.ASYMPTOTIC, result.method)

    def test_coding_gain(self):
        """
        C(R) = g_0^(-1/d); for SISO 1 / (2^R - 1)
        """
        cfg = SystemConfig(1, 1, 2.0, 0.0)

        self.assertAlmostEqual(1.0 / 3.0, coding_gain(cfg), places=12)
        self.assertEqual(6, diversity_order(SystemConfig(3, 2, 1.0, 0.0)))

    def test_gain_decreases_with_rate(self):
        """
        Higher rates cost coding gain
        """
        gains = [coding_gain(SystemConfig(2, 2, rate, 0.0)) for rate in (0.5, 1.0, 2.0, 4.0)]

        self.assertTrue(all(b < a for a, b in zip(gains, gains[1:])))

    def test_interchange_symmetry(self):
        """
        g_0 is symmetric in the antenna counts
        """
        self.assertEqual(g0(SystemConfig(3, 2, 2.0, 0.0)), g0(SystemConfig(2, 3, 2.0, 0.0)))


class FactorTest(unittest.TestCase):

    def test_correlation_factor(self):
        """
        S = det(R_r)^(-n_t) det(R_t)^(-n_r)
        """
        cfg = SystemConfig(2, 3, 1.0, 0.0)
        t = EigenSpectrum.correlation([1.5, 0.5])
        r = EigenSpectrum.correlation([2.7, 0.2, 0.1])

        self.assertAlmostEqual(1.0, spatial_correlation_factor(t, r, cfg) / (0.054 ** -2 * 0.75 ** -3), places=10)

    def test_power_factor_and_bound(self):
        """
        P = det(R_x)^(-n_r) is at least the AM-GM bound
        """
        cfg = SystemConfig(3, 3, 1.0, 0.0)
        x = EigenSpectrum.allocation([2.6, 0.2, 0.2], 3)
        reduced = EigenSpectrum.allocation([0.5, 0.5], 2)

        self.assertAlmostEqual(0.104 ** -3, power_allocation_factor(x, cfg), places=6)
        self.assertAlmostEqual(1.0, power_allocation_bound(x, cfg), places=12)
        self.assertEqual(0.5 ** -4, power_allocation_bound(reduced, SystemConfig(2, 2, 1.0, 0.0)))
        self.assertGreaterEqual(power_allocation_factor(x, cfg), power_allocation_bound(x, cfg))

    def test_semi_and_full(self):
        """
        The semi and full asymptotes scale the kernel by the correlation factor
        """
        cfg = SystemConfig(2, 2, 2.0, 20.0)
        r = EigenSpectrum.correlation([1.5, 0.5])
        identity = EigenSpectrum.identity_of(2)
        base = asym_independent(cfg).raw_value

        self.assertAlmostEqual(1.0, asym_semi(cfg, r, 'rx').raw_value / (base * 0.75 ** -2), places=9)
        self.assertAlmostEqual(1.0, asym_full(cfg, identity, r).raw_value / (base * 0.75 ** -2), places=9)
        self.assertAlmostEqual(1.0, asym_full(cfg, r, r).raw_value / (base * 0.75 ** -4), places=9)

        with self.assertRaises(ConfigError):
            asym_semi(cfg, r, 'both')

    def test_routing(self):
        """
        asym_for_model picks the evaluator for the scenario model
        """
        cfg = SystemConfig(2, 2, 2.0, 20.0)
        scenario = ChannelScenario.build(Model.SEMI_TX, 2, 2, t=[1.5, 0.5])

        self.assertAlmostEqual(
            asym_semi(cfg, scenario.t_spectrum, 'tx').raw_value, asym_for_model(scenario, cfg).raw_value
        )


class UnifiedAsymptoteTest(unittest.TestCase):

    def test_decomposition(self):
        """
        p = P S (C rho)^(-d) reproduces the per-model asymptote
        """
        cfg = SystemConfig(3, 3, 2.0, 15.0)
        scenario = ChannelScenario.build(Model.FULL, 3, 3, t=[2.3, 0.5, 0.2], r=[2.7, 0.2, 0.1])

        parts = unified_asymptote(scenario, cfg)

        self.assertEqual(9, parts.diversity_order)
        self.assertEqual(1.0, parts.power_factor)
        self.assertAlmostEqual(
            1.0, parts.probability / asym_full(cfg, scenario.t_spectrum, scenario.r_spectrum).raw_value, places=9
        )
        self.assertAlmostEqual(parts.probability, parts.result().probability)

    def test_power_allocation_matches_merged(self):
        """
        Commuting covariances give the same asymptote either way
        """
        cfg = SystemConfig(3, 3, 3.0, 20.0)
        scenario = ChannelScenario.build(Model.FULL, 3, 3, t=[1.3, 1.0, 0.7], r=[1.5, 1.0, 0.5], x=[2.6, 0.2, 0.2])

        separate = unified_asymptote(scenario, cfg)
        merged = unified_asymptote(scenario, cfg, t_matrix=np.diag([1.3, 1.0, 0.7]), x_matrix=np.diag([2.6, 0.2, 0.2]))

        self.assertAlmostEqual(1.0, merged.probability / separate.probability, places=9)
        self.assertIn('merged', merged.flags)
        self.assertEqual(1.0, merged.power_factor)

    def test_clamped_at_low_snr(self):
        """
        At low SNR the asymptote exceeds one and is clamped
        """
        result = unified_asymptote(ChannelScenario.build(Model.INDEPENDENT, 2, 2), SystemConfig(2, 2, 4.0, -10.0)).result()

        self.assertEqual(1.0, result.probability)
        self.assertIn('clamped', result.flags)


class TargetTest(unittest.TestCase):

    def test_snr_for_target(self):
        """
        The asymptote evaluated at the returned SNR hits the target
        """
        cfg = SystemConfig(2, 2, 2.0, 0.0)
        scenario = ChannelScenario.build(Model.SEMI_RX, 2, 2, r=[1.5, 0.5])

        snr_db = snr_for_target_outage(scenario, cfg, 1e-4)

        self.assertAlmostEqual(1.0, unified_asymptote(scenario, cfg.with_snr(snr_db)).probability / 1e-4, places=9)

    def test_rate_for_target(self):
        """
        The returned rate reaches the target outage from below
        """
        cfg = SystemConfig(2, 2, 1.0, 20.0)
        scenario = ChannelScenario.build(Model.INDEPENDENT, 2, 2)

        rate = rate_for_target_outage(scenario, cfg, 1e-3)

        self.assertAlmostEqual(1.0, unified_asymptote(scenario, cfg.with_rate(rate)).probability / 1e-3, places=6)

    def test_invalid_target(self):
        """
        Targets outside (0, 1) are rejected
        """
        scenario = ChannelScenario.build(Model.INDEPENDENT, 2, 2)

        with self.assertRaises(ConfigError):
            snr_for_target_outage(scenario, SystemConfig(2, 2, 1.0, 0.0), 1.5)
        with self.assertRaises(ConfigError):
            rate_for_target_outage(scenario, SystemConfig(2, 2, 1.0, 0.0), 0.0)


class DiversityTest(unittest.TestCase):

    def test_slope(self):
        """
        The asymptote falls with slope -n_t n_r in log-log coordinates
        """
        def evaluate_at(rho):
            return asym_independent(SystemConfig.from_rho(3, 2, 2.0, rho)).raw_value

        self.assertAlmostEqual(-6.0, log_log_slope(evaluate_at, 1e6, 1e8), places=8)

    def test_consistency_siso(self):
        """
        The SISO asymptote over exact outage tends to one
        """
        report = asymptotic_consistency(
            ChannelScenario.build(Model.INDEPENDENT, 1, 1), SystemConfig(1, 1, 1.0, 0.0), (20.0, 30.0)
        )

        self.assertEqual(2, len(report.ratios))
        self.assertTrue(all(ratio > 1.0 for ratio in report.ratios))
        self.assertAlmostEqual(1.0, report.extrapolated, places=4)

        with self.assertRaises(ConfigError):
            asymptotic_consistency(ChannelScenario.build(Model.INDEPENDENT, 1, 1), SystemConfig(1, 1, 1.0, 0.0), (20.0,))
