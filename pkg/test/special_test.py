# -*- coding: utf-8 -*-

#
# Standard libraries
#

import math
import unittest

#
# Third party libraries
#

import mpmath
import numpy as np
from mock import patch

#
# Internal libraries
#

from mimo_outage.errors import DomainError, InvalidDegenerateParameters, PoleAtNonpositiveInteger
from mimo_outage.special import gamma, gauss_legendre_panels, kummer_series, ln_gamma, pochhammer, tricomi_psi, xi


class GammaTest(unittest.TestCase):

    POINTS = [0.5, 1.0, 3.7, 12.25, -2.5, 0.3 + 4.0j, 2.0 - 7.5j, -3.2 + 0.1j, 1.5 + 60.0j]

    def test_matches_mpmath(self):
        """
        Gamma agrees with mpmath on both half planes
        """
        for z in self.POINTS:
            expected = complex(mpmath.gamma(z))
            actual = gamma(z)
            self.assertLess(abs(actual - expected), 1e-11 * abs(expected), msg=str(z))

    def test_recurrence(self):
        """
        Gamma(z + 1) = z Gamma(z)
        """
        for z in self.POINTS:
            expected = z * gamma(z)
            self.assertLess(abs(gamma(z + 1.0) - expected), 1e-12 * abs(expected), msg=str(z))

    def test_log_gamma_branch(self):
        """
        ln_gamma is log Gamma with its imaginary part reduced to [-pi, pi)
        """
        for z in self.POINTS:
            expected = complex(mpmath.loggamma(z))
            actual = ln_gamma(z)
            self.assertAlmostEqual(expected.real, actual.real, places=10)
            self.assertGreaterEqual(actual.imag, -math.pi)
            self.assertLess(actual.imag, math.pi)
            turns = (expected.imag - actual.imag) / (2.0 * math.pi)
            self.assertAlmostEqual(round(turns), turns, places=9)

    def test_large_imaginary_part(self):
        """
        The reflection branch does not overflow far up the imaginary axis
        """
        value = ln_gamma(-0.5 + 800.0j)
        expected = float(mpmath.re(mpmath.loggamma(-0.5 + 800.0j)))

        self.assertLess(abs(value.real - expected), 1e-10 * abs(expected))

    def test_vectorised(self):
        """
        Arrays are evaluated elementwise
        """
        values = gamma(np.array([1.0, 2.0, 3.0, 4.0, 5.0]))

        np.testing.assert_allclose([1.0, 1.0, 2.0, 6.0, 24.0], values.real, rtol=1e-13)

    def test_poles(self):
        """
        Gamma poles at the non-positive integers raise
        """
        with self.assertRaises(PoleAtNonpositiveInteger):
            ln_gamma(0.0)
        with self.assertRaises(PoleAtNonpositiveInteger):
            gamma(np.array([1.0, -3.0]))

    def test_pochhammer(self):
        """
        Rising factorials, including the empty product
        """
        self.assertEqual(12.0, pochhammer(3.0, 2))
        self.assertEqual(1.0, pochhammer(5.0, 0))
        self.assertEqual(24.0, pochhammer(1.0, 4))

        with self.assertRaises(DomainError):
            pochhammer(1.0, -1)


class GaussLegendreTest(unittest.TestCase):

    def test_polynomial_exactness(self):
        """
        Composite rules integrate polynomials exactly
        """
        nodes, weights = gauss_legendre_panels(0.0, 2.0, 3)

        self.assertEqual(3 * 16, nodes.size)
        self.assertAlmostEqual(2.0, weights.sum(), places=13)
        self.assertAlmostEqual(2.0 ** 8 / 8.0, float(weights @ nodes ** 7), places=10)


class KummerSeriesTest(unittest.TestCase):

    def test_exponential(self):
        """
        M(a, a; z) = e^z for complex a
        """
        a = np.array([1.0, 2.5 + 3.0j, 0.5 - 40.0j])

        total, scale, converged = kummer_series(a, a, 7.5)

        np.testing.assert_allclose(np.full(3, math.exp(7.5)), total.real, rtol=1e-13)
        np.testing.assert_allclose(np.zeros(3), total.imag, atol=1e-13 * math.exp(7.5))
        self.assertTrue(np.all(converged))
        self.assertTrue(np.all(scale >= np.abs(total) * (1.0 - 1e-13)))

    def test_truncated(self):
        """
        Too few terms leave the sum unconverged
        """
        _, _, converged = kummer_series(1.0, 1.5, 10.0, terms=5)

        self.assertFalse(bool(converged))


class TricomiPsiTest(unittest.TestCase):

    CASES = [
        (1.0, 2.5, 0.3),
        (2.0, 1.0 + 3.0j, 1.0),
        (3.0, 4.5 - 2.0j, 0.05),
        (0.5, 3.2, 0.1),
    ]

    def test_matches_hyperu(self):
        """
        Psi agrees with mpmath.hyperu for real and complex b
        """
        for a, b, z in self.CASES:
            expected = complex(mpmath.hyperu(a, b, z))
            actual = tricomi_psi(a, b, z)
            self.assertLess(abs(actual - expected), 1e-8 * abs(expected), msg=str((a, b, z)))

    def test_closed_form(self):
        """
        Psi(k, k + 1; z) = z^(-k)
        """
        for k in (1, 2, 4):
            self.assertAlmostEqual(1.0, (tricomi_psi(float(k), k + 1.0, 0.2) * 0.2 ** k).real, places=9)

    def test_kummer_two_term(self):
        """
        Psi matches Kummer's two-term form summed at high precision, across a cancelling point and large Im b
        """
        points = [(2.0, 2.5 + 1.0j, 20.0), (3.0, 1.5 + 300.0j, 2.0), (1.0, 0.3 - 25.0j, 0.4), (1.5, 4.2 + 60.0j, 6.0)]

        with mpmath.workdps(40):
            for a, b, z in points:
                a_mp, b_mp, z_mp = mpmath.mpf(a), mpmath.mpc(b), mpmath.mpf(z)
                expected = complex(
                    mpmath.gamma(1 - b_mp) / mpmath.gamma(a_mp - b_mp + 1) * mpmath.hyp1f1(a_mp, b_mp, z_mp)
                    + mpmath.gamma(b_mp - 1) / mpmath.gamma(a_mp) * z_mp ** (1 - b_mp)
                    * mpmath.hyp1f1(a_mp - b_mp + 1, 2 - b_mp, z_mp)
                )
                actual = tricomi_psi(a, b, z)
                self.assertLess(abs(actual - expected), 1e-8 * abs(expected), msg=str((a, b, z)))

    def test_contiguous_relation(self):
        """
        Psi(a, b) = Psi(a, b - 1) + a Psi(a + 1, b), far up the imaginary axis
        """
        a, z = 2.0, 1.5
        for b in (2.5 + 200.0j, 0.5 + 1500.0j):
            left = tricomi_psi(a, b, z)
            lower, raised = tricomi_psi(a, b - 1.0, z), a * tricomi_psi(a + 1.0, b, z)
            scale = max(abs(left), abs(lower), abs(raised))
            self.assertLess(abs(left - lower - raised), 1e-9 * scale, msg=str(b))

    def test_quadrature_route(self):
        """
        The quadrature route reproduces the series route
        """
        b = np.array([1.5 + 0.5j, 2.5 - 8.0j, 0.7 + 30.0j])
        series = tricomi_psi(2.0, b, 0.8)

        with patch('mimo_outage.special.PSI_SERIES_MAX_Z', 0.0):
            quadrature, _, converged = tricomi_psi(2.0, b, 0.8, full_output=True)

        self.assertTrue(np.all(converged))
        np.testing.assert_allclose(series, quadrature, rtol=1e-9)

    def test_vector_matches_scalar(self):
        """
        A vector of b values gives the same values as scalar calls
        """
        b = np.array([1.5 + 0.5j, 1.5 - 20.0j, 4.0 + 0.0j])

        values, errors, converged = tricomi_psi(2.0, b, 0.5, full_output=True)

        self.assertEqual((3,), values.shape)
        self.assertTrue(np.all(converged))
        for i, point in enumerate(b):
            self.assertLess(abs(values[i] - tricomi_psi(2.0, point, 0.5)), 1e-12 * abs(values[i]))
            self.assertLess(errors[i], 1e-7 * abs(values[i]))

    def test_domain(self):
        """
        a and z must be positive
        """
        with self.assertRaises(DomainError):
            tricomi_psi(0.0, 2.0, 1.0)
        with self.assertRaises(DomainError):
            tricomi_psi(1.0, 2.0, -1.0)


class XiTest(unittest.TestCase):

    def test_degenerate(self):
        """
        With A = 0 the function reduces to Gamma(a - s)
        """
        self.assertAlmostEqual(6.0, xi(3.0, -1, 0, 1, -1.0).real, places=10)

        with self.assertRaises(InvalidDegenerateParameters):
            xi(3.0, 1, 0, 1, -1.0)

    def test_regular(self):
        """
        A^(b-1) Psi(phi, b; A) with b = phi + a + alpha s
        """
        a, alpha, big_a, phi, s = 1.0, 1, 0.5, 2.0, 0.5 + 1.0j
        b = phi + a + alpha * s
        expected = complex(mpmath.power(big_a, b - 1) * mpmath.hyperu(phi, b, big_a))

        self.assertLess(abs(xi(a, alpha, big_a, phi, s) - expected), 1e-8 * abs(expected))
