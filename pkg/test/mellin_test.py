# -*- coding: utf-8 -*-

#
# Standard libraries
#

import math
import unittest

#
# Third party libraries
#

import numpy as np
from mock import patch

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, DomainError, NumericalError
from mimo_outage.mellin import (
    EXACT_ABSCISSA,
    MellinContour,
    choose_contour,
    inverse_mellin_cdf,
    panel_width_for,
    wynn_epsilon,
)
from mimo_outage.model import Model, SystemConfig
from mimo_outage.residue import g_sigma


def log_exponential_phi(rate):
    """
    E[G^(s-1)] for G = exp(E), E exponential with the given rate, so that
    P(G < x) = 1 - x^(-rate).
    """
    def phi_at(s):
        return rate / (rate - (np.asarray(s) - 1.0))
    return phi_at


class WynnEpsilonTest(unittest.TestCase):

    def test_alternating_series(self):
        """
        The alternating harmonic series is accelerated to ln 2
        """
        terms = [(-1.0) ** (k + 1) / k for k in range(1, 21)]

        limit, err = wynn_epsilon(np.cumsum(terms))

        self.assertAlmostEqual(math.log(2.0), limit, places=10)
        self.assertLess(err, 1e-8)

    def test_short_sequences(self):
        """
        Fewer than three partial sums fall back to the last one
        """
        limit, err = wynn_epsilon([1.0, 1.5])

        self.assertEqual(1.5, limit)
        self.assertEqual(0.5, err)


class MellinContourTest(unittest.TestCase):

    def test_validation(self):
        """
        The abscissa is negative and the node count a multiple of the GL order
        """
        with self.assertRaises(ConfigError):
            MellinContour(0.5, 40.0, 64)
        with self.assertRaises(ConfigError):
            MellinContour(-0.5, 40.0, 10)
        with self.assertRaises(ConfigError):
            MellinContour(-0.5, 0.0, 64)

    def test_panels(self):
        """
        Panels and their width follow from the node count
        """
        contour = MellinContour(-0.5, 40.0, 640)

        self.assertEqual(40, contour.panels)
        self.assertEqual(1.0, contour.panel_width)
        self.assertEqual(-3.5, contour.shifted(-3.5).c)

    def test_panel_width(self):
        """
        Panels resolve a quarter period of x^(-it)
        """
        self.assertEqual(1.0, panel_width_for(1.0))
        self.assertAlmostEqual(0.5 * math.pi / math.log(1024.0), panel_width_for(1024.0))

    def test_choose_contour(self):
        """
        Exact evaluation uses the fixed abscissa, kernel checks go left of the poles
        """
        cfg = SystemConfig(3, 2, 2.0, 10.0)

        self.assertEqual(EXACT_ABSCISSA, choose_contour(Model.INDEPENDENT, cfg, 'exact').c)
        self.assertEqual(-4.5, choose_contour(Model.INDEPENDENT, cfg, 'asymptotic-check').c)
        self.assertLessEqual(choose_contour(Model.FULL, cfg, 'asymptotic-check').c, -4.5)

        with self.assertRaises(ConfigError):
            choose_contour(Model.INDEPENDENT, cfg, 'plot')


class InverseMellinTest(unittest.TestCase):

    def test_known_distribution(self):
        """
        The engine inverts a transform with a closed-form CDF
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        for rate, x in ((2.0, 2.0), (0.5, 8.0), (3.0, 1.1)):
            result = inverse_mellin_cdf(log_exponential_phi(rate), x, contour)
            self.assertAlmostEqual(1.0 - x ** -rate, result.value, places=8)
            self.assertTrue(result.converged)
            self.assertLess(result.err, 1e-8)

    def test_residue_kernel(self):
        """
        Left of every pole the engine reproduces a residue sum
        """
        kernel = g_sigma((1,), 0, 1)
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 2.0, 0.0)).shifted(-2.5)

        result = inverse_mellin_cdf(kernel.phi_at, 4.0, contour)

        self.assertAlmostEqual(4.5, result.value, places=7)

    def test_history_non_increasing(self):
        """
        The recorded error history never increases
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        history = inverse_mellin_cdf(log_exponential_phi(1.0), 2.0, contour).history

        self.assertTrue(all(b <= a for a, b in zip(history, history[1:])))

    @patch('mimo_outage.mellin.log')
    def test_not_converged(self, mock_log):
        """
        Running out of height is reported through the flag, not raised
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        result = inverse_mellin_cdf(log_exponential_phi(1.0), 2.0, contour, rtol=0.0, atol=0.0, max_half_height=40.0)

        self.assertFalse(result.converged)
        self.assertTrue(mock_log.warning.called)

    def test_asymmetric_transform(self):
        """
        Transforms without conjugate symmetry are rejected
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        with self.assertRaises(NumericalError):
            inverse_mellin_cdf(lambda s: np.exp(1j * np.asarray(s)), 2.0, contour)

    def test_imaginary_residual(self):
        """
        The imaginary part over the whole line vanishes for a symmetric transform
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        for rate, x in ((2.0, 2.0), (0.5, 8.0)):
            result = inverse_mellin_cdf(log_exponential_phi(rate), x, contour)
            self.assertLess(result.imag_residual, 1e-10 * abs(result.value))

    @patch('mimo_outage.mellin.log')
    @patch('mimo_outage.mellin._probe_symmetry')
    def test_imaginary_residual_flagged(self, mock_symmetry, mock_log):
        """
        A transform with a rotated phase leaves an imaginary part and is not converged
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))
        phi = log_exponential_phi(2.0)

        result = inverse_mellin_cdf(lambda s: phi(s) * (1.0 + 1e-6j), 2.0, contour)

        self.assertTrue(mock_symmetry.called)
        self.assertGreater(result.imag_residual, 1e-10 * abs(result.value))
        self.assertFalse(result.converged)
        self.assertTrue(mock_log.warning.called)

    def test_domain(self):
        """
        The CDF argument must be positive
        """
        contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, 1.0, 0.0))

        with self.assertRaises(DomainError):
            inverse_mellin_cdf(log_exponential_phi(1.0), 0.0, contour)
