# -*- coding: utf-8 -*-

#
# Standard libraries
#

import math
import unittest

#
# Internal libraries
#

from mimo_outage.analysis import (
    CheckRecord,
    convexity_scan,
    majorization_chain,
    majorizes,
    probe_spectrum,
    special_case_embedding_check,
    sum_reduction_check,
)
from mimo_outage.errors import ConfigError, LengthMismatch
from mimo_outage.model import SystemConfig


class MajorizationTest(unittest.TestCase):

    def test_uniform_is_majorized(self):
        """
        The uniform vector is majorized by every vector with the same sum
        """
        self.assertTrue(majorizes([1.0, 1.0, 1.0], [2.3, 0.5, 0.2]))
        self.assertFalse(majorizes([2.3, 0.5, 0.2], [1.0, 1.0, 1.0]))

    def test_order_free(self):
        """
        Entries are compared after sorting
        """
        self.assertTrue(majorizes([0.2, 2.3, 0.5], [0.1, 2.7, 0.2]))

    def test_totals_differ(self):
        """
        Vectors with different sums are not comparable
        """
        self.assertFalse(majorizes([1.0, 1.0], [2.0, 0.5]))

    def test_length_mismatch(self):
        """
        Vectors of different lengths raise
        """
        with self.assertRaises(LengthMismatch):
            majorizes([1.0, 1.0], [1.0, 1.0, 1.0])

    def test_chain(self):
        """
        Chains are checked pairwise
        """
        chain = [[1.0, 1.0, 1.0], [1.6, 0.9, 0.5], [2.3, 0.5, 0.2], [2.7, 0.2, 0.1]]

        self.assertTrue(majorization_chain(chain))
        self.assertFalse(majorization_chain(chain[::-1]))


class SumReductionTest(unittest.TestCase):

    def test_product_form(self):
        """
        Double permutation sums reduce to n! single sums
        """
        for n in range(1, 5):
            record = sum_reduction_check(n, trials=5, seed=n)
            self.assertIsInstance(record, CheckRecord)
            self.assertTrue(record.passed, record.detail)
            self.assertEqual('sum-reduction', record.name)

    def test_limits(self):
        """
        Sizes outside the supported range are refused
        """
        for n in (0, 5):
            with self.assertRaises(ConfigError):
                sum_reduction_check(n)


class ConvexityTest(unittest.TestCase):

    def test_convex_kernel(self):
        """
        2^R - 1 is increasing and convex in R
        """
        record = convexity_scan(lambda r: 2.0 ** r - 1.0, [0.5 * k for k in range(1, 20)])

        self.assertTrue(record.passed)
        self.assertGreaterEqual(record.measured, 0.0)

    def test_concave_kernel(self):
        """
        log(1 + R) fails the scan
        """
        record = convexity_scan(math.log1p, [0.5 * k for k in range(1, 20)])

        self.assertFalse(record.passed)
        self.assertLess(record.measured, 0.0)

    def test_decreasing_kernel(self):
        """
        A convex but decreasing kernel fails the scan
        """
        record = convexity_scan(lambda r: 2.0 ** -r, [0.5 * k for k in range(1, 20)])

        self.assertFalse(record.passed)
        self.assertIn('increasing=False', record.detail)

    def test_short_grid(self):
        """
        The scan needs three points
        """
        with self.assertRaises(ConfigError):
            convexity_scan(math.exp, [1.0, 2.0])


class EmbeddingTest(unittest.TestCase):

    def test_probe_spectrum(self):
        """
        Probe spectra are distinct with trace n
        """
        spectrum = probe_spectrum(3)

        self.assertEqual((1.5, 1.0, 0.5), spectrum.values)
        self.assertTrue(probe_spectrum(1).identity)

    def test_embedding(self):
        """
        The fully correlated asymptote contains the other models
        """
        for n_t, n_r in ((2, 2), (3, 2), (3, 3)):
            record = special_case_embedding_check(SystemConfig(n_t, n_r, 2.0, 20.0))
            self.assertTrue(record.passed, record.detail)
            self.assertEqual('embedding', record.as_dict()['name'])
