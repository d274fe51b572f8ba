# -*- coding: utf-8 -*-
"""
Exact outage probability P(G < 2^R), G = det(I + rho H H^H), for
independent, semi-correlated and fully correlated Rayleigh channels.

Each model supplies the Mellin transform phi(s) = E[G^(s-1)] as a
determinant of Tricomi Psi values (the signed permutation sums of the
closed forms), and the CDF comes out of the contour engine.
"""

#
# Standard libraries
#

import functools
import logging
import math

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, DimensionMismatch, MellinSelfTestFailure, ModelMismatch
from mimo_outage.mellin import choose_contour, inverse_mellin_cdf
from mimo_outage.model import Method, Model, OutageResult, interchange_normalize, validate_scenario
from mimo_outage.monte_carlo import absorb_power_allocation
from mimo_outage.permutations import leibniz_determinant
from mimo_outage.special import pochhammer, tricomi_psi


log = logging.getLogger(__name__)

SELF_TEST_TOL = 1e-8

# Eigenvalues this close (relative) share one confluent column.
CONFLUENT_RTOL = 1e-5

SIDES = ('rx', 'tx')


def _complex_argument(s):
    return np.asarray(s, dtype=complex), np.ndim(s) == 0


def _finish(value, scalar):
    value = np.asarray(value)
    return complex(value.reshape(())) if scalar else value


def _factorial_norm(n_t, n_r):
    return math.prod(math.factorial(n_r - i) * math.factorial(n_t - i) for i in range(1, n_r + 1))


def _scaled_psi(a, s, z, log_scale):
    """
    exp(log_scale) * Psi(a, s + a; z), vectorised over s.
    """
    return np.exp(log_scale) * np.asarray(tricomi_psi(a, s + a, z))


def _confluent_points(values):
    """
    Distinct eigenvalues with their multiplicities, descending. Values within
    CONFLUENT_RTOL of their neighbour are merged at the cluster mean.
    """
    clusters = []
    for value in sorted(values, reverse=True):
        if clusters and clusters[-1][-1] - value <= CONFLUENT_RTOL * clusters[-1][-1]:
            clusters[-1].append(value)
        else:
            clusters.append([value])
    return [(math.fsum(cluster) / len(cluster), len(cluster)) for cluster in clusters]


def _power_derivatives(x, power, order):
    """
    d^k/dx^k x^power for k = 0 .. order.
    """
    return [pochhammer(power - k + 1.0, k) * x ** (power - k) for k in range(order + 1)]


def _product_derivative(first, second, order):
    # Leibniz rule over two derivative sequences
    return sum(math.comb(order, j) * first[j] * second[order - j] for j in range(order + 1))


def phi_independent(s, cfg, accumulator='neumaier'):
    """
    Mellin transform of G for i.i.d. Rayleigh fading.

    The signed sum over sigma of prod_i Gamma(alpha_i) rho^(-alpha_i)
    Psi(alpha_i, s + alpha_i; 1/rho), alpha_i = tau + i + sigma_i, is the
    determinant of a Hankel matrix in alpha = tau + i + j.
    """
    cfg = cfg.ordered()
    s, scalar = _complex_argument(s)
    n_t, n_r, tau = cfg.n_t, cfg.n_r, cfg.tau
    log_rho = math.log(cfg.rho)
    z = 1.0 / cfg.rho

    entries = {}
    for alpha in range(tau + 2, tau + 2 * n_r + 1):
        entries[alpha] = _scaled_psi(alpha, s, z, math.lgamma(alpha) - alpha * log_rho)
    matrix = np.array([
        [entries[tau + i + j] for j in range(1, n_r + 1)]
        for i in range(1, n_r + 1)
    ])
    value = leibniz_determinant(matrix, accumulator) / _factorial_norm(n_t, n_r)
    return _finish(value, scalar)


def _semi_derivatives(alpha, s, rho, r, order):
    """
    d^k/dr^k of rho^(-alpha) Psi(alpha, s + alpha; 1/(rho r)) for k = 0 .. order.

    Differentiating under the integral only raises the first argument, so
    order k mixes Psi(alpha + q, s + alpha; .) for q <= k.
    """
    z = 1.0 / (rho * r)
    scale = math.exp(-alpha * math.log(rho))
    psi = [np.asarray(tricomi_psi(alpha + q, s + alpha, z)) for q in range(order + 1)]
    derivatives = []
    for k in range(order + 1):
        total = sum(
            math.comb(k, q) * pochhammer(alpha - k + q + 1.0, k - q) * pochhammer(alpha, q)
            * pochhammer(s - q, q) * psi[q]
            for q in range(k + 1)
        )
        derivatives.append(scale * total / r ** k)
    return derivatives


def _semi_rows(s, r, order, cfg):
    """
    (numerator, normaliser) derivative sequences of every row at eigenvalue r.
    """
    n, m, rho = cfg.n_r, cfg.n_t, cfg.rho
    rows = []
    if m >= n:
        for i in range(1, n + 1):
            alpha = m - n + i
            rows.append((_semi_derivatives(alpha, s, rho, r, order), _power_derivatives(r, alpha, order)))
        return rows
    lead = _power_derivatives(r, n - m - 1, order)
    for k in range(1, m + 1):
        psi = _semi_derivatives(k, s, rho, r, order)
        rows.append((
            [_product_derivative(lead, psi, j) for j in range(order + 1)],
            _power_derivatives(r, n - m - 1 + k, order),
        ))
    for i in range(m + 1, n + 1):
        power = _power_derivatives(r, i - m - 1, order)
        rows.append(([np.full(s.shape, p, dtype=complex) for p in power], power))
    return rows


def phi_semi(s, cfg, r_spectrum, accumulator='neumaier'):
    """
    Mellin transform of G when only the receive side is correlated.

    The determinant of Psi values is divided by its value at s = 1, where
    Psi(k, k + 1; z) = z^(-k) reduces it to a generalised Vandermonde
    determinant in the eigenvalues. A repeated eigenvalue of multiplicity
    mu fills its mu columns with the row functions and their first mu - 1
    derivatives (over k!) in both determinants.
    """
    s, scalar = _complex_argument(s)
    n = cfg.n_r
    if r_spectrum.n != n:
        raise DimensionMismatch('Receive spectrum has {0} values, expected {1}'.format(r_spectrum.n, n))

    numerator = [[] for _ in range(n)]
    normaliser = [[] for _ in range(n)]
    for r, multiplicity in _confluent_points(r_spectrum.values):
        rows = _semi_rows(s, r, multiplicity - 1, cfg)
        for k in range(multiplicity):
            for row, (top, bottom) in enumerate(rows):
                numerator[row].append(top[k] / math.factorial(k))
                normaliser[row].append(bottom[k] / math.factorial(k))

    top = leibniz_determinant(np.array(numerator), accumulator)
    bottom = leibniz_determinant(np.array(normaliser, dtype=float), accumulator)
    return _finish(top / bottom, scalar)


def _psi_shifted(q, w, s, n):
    return np.asarray(tricomi_psi(1.0 + q, s + n + q, w))


def _psi_closed(q, w, n):
    # Psi(1 + q, n + 1 + q; w) is a polynomial in 1/w
    return math.fsum(
        math.comb(n - 1, j) * pochhammer(1.0 + q, j) * w ** (-(1 + q + j)) for j in range(n)
    )


def _full_entry(psi_at, n, rho, a, b, row_order, col_order):
    """
    d^row/da^row d^col/db^col of (a/rho)^n Psi(1, beta; a b / rho), over
    row! col!, with psi_at(q, w) = Psi(1 + q, beta + q; w).
    """
    w = a * b / rho
    total = 0.0
    for j in range(row_order + 1):
        q = row_order + col_order - j
        total = total + (
            math.comb(row_order, j) * pochhammer(n + col_order - j + 1.0, j) * a ** (n + col_order - j)
            * (b / rho) ** (row_order - j) * (-1) ** q * math.factorial(q) * psi_at(q, w)
        )
    return total / (rho ** (n + col_order) * math.factorial(row_order) * math.factorial(col_order))


def phi_full(s, cfg, t_spectrum, r_spectrum, accumulator='neumaier'):
    """
    Mellin transform of G with both ends correlated, n_t >= n_r.

    Rows i <= n_r of the n_t x n_t determinant hold Psi(1, s + n_r; a_i b_j / rho)
    with a = 1/r, b = 1/t; the remaining rows are powers of b. The ratio
    against the closed-form value at s = 1 fixes the normalisation.
    Repeated eigenvalues on either side take confluent rows or columns
    (derivatives in a or b) in both determinants.
    """
    s, scalar = _complex_argument(s)
    n, m = cfg.n_r, cfg.n_t
    if m < n:
        raise ConfigError('Full-correlation transform needs n_t >= n_r, got {0}x{1}'.format(m, n))
    if t_spectrum.n != m or r_spectrum.n != n:
        raise DimensionMismatch(
            'Spectra lengths ({0}, {1}) do not match n_t={2}, n_r={3}'.format(t_spectrum.n, r_spectrum.n, m, n)
        )
    rho = cfg.rho
    rows = [(1.0 / r, k) for r, count in _confluent_points(r_spectrum.values) for k in range(count)]
    columns = [(1.0 / t, k) for t, count in _confluent_points(t_spectrum.values) for k in range(count)]
    shifted = functools.partial(_psi_shifted, s=s, n=n)
    closed = functools.partial(_psi_closed, n=n)

    numerator = [[_full_entry(shifted, n, rho, a, b, k, l) for b, l in columns] for a, k in rows]
    normaliser = [[_full_entry(closed, n, rho, a, b, k, l) for b, l in columns] for a, k in rows]
    for i in range(n + 1, m + 1):
        power = m - i
        entries = [
            pochhammer(power - l + 1.0, l) * b ** (power - l) / math.factorial(l) for b, l in columns
        ]
        numerator.append([np.full(s.shape, entry, dtype=complex) for entry in entries])
        normaliser.append(entries)

    top = leibniz_determinant(np.array(numerator), accumulator)
    bottom = leibniz_determinant(np.array(normaliser, dtype=float), accumulator)
    value = top / bottom
    for i in range(2, n + 1):
        value = value * ((i - 1.0) / (s + i - 2.0)) ** (i - 1)
    return _finish(value, scalar)


def mellin_self_test(phi_at, label):
    """
    E[G^0] = 1: the transform at s = 1 must be one.
    """
    value = complex(np.asarray(phi_at(np.array([1.0 + 0j])))[0])
    if abs(value - 1.0) > SELF_TEST_TOL:
        raise MellinSelfTestFailure(
            'Mellin transform of the {0} model is {1!r} at s = 1, expected 1'.format(label, value)
        )
    log.debug('Mellin self-test for %s passed: phi(1) = %r', label, value)
    return value


def _contour_outage(phi_at, model, cfg, contour=None):
    mellin_self_test(phi_at, model.value)
    contour = choose_contour(model, cfg, 'exact') if contour is None else contour
    integral = inverse_mellin_cdf(phi_at, cfg.threshold, contour)
    flags = () if integral.converged else ('non-converged',)
    result = OutageResult.from_raw(integral.value, Method.EXACT, integral.err, flags)
    log.info(
        'Exact %s outage at %gx%g, R=%g, %g dB: %.12g (err %.3g)',
        model.value, cfg.n_t, cfg.n_r, cfg.rate, cfg.snr_db, result.probability, result.err_estimate,
    )
    return result


def outage_independent(cfg, accumulator='neumaier', contour=None):
    cfg = cfg.ordered()
    phi_at = functools.partial(phi_independent, cfg=cfg, accumulator=accumulator)
    return _contour_outage(phi_at, Model.INDEPENDENT, cfg, contour)


def outage_semi(cfg, r_spectrum, side='rx', accumulator='neumaier', contour=None):
    """
    Outage with one correlated end. A transmit-side spectrum is handled by
    interchanging the link ends, which leaves the outage unchanged.
    """
    if side not in SIDES:
        raise ConfigError('Unknown correlated side {0!r}, expected one of {1}'.format(side, SIDES))
    if side == 'tx':
        cfg = cfg.swapped()
    if r_spectrum.identity:
        raise ModelMismatch('Uncorrelated spectrum given to the semi-correlated evaluator')
    phi_at = functools.partial(phi_semi, cfg=cfg, r_spectrum=r_spectrum, accumulator=accumulator)
    return _contour_outage(phi_at, Model.SEMI_RX, cfg, contour)


def outage_full(cfg, t_spectrum, r_spectrum, accumulator='neumaier', contour=None):
    if t_spectrum.identity or r_spectrum.identity:
        raise ModelMismatch('Uncorrelated spectrum given to the fully correlated evaluator')
    if cfg.n_t < cfg.n_r:
        cfg, t_spectrum, r_spectrum = cfg.swapped(), r_spectrum, t_spectrum
    phi_at = functools.partial(
        phi_full, cfg=cfg, t_spectrum=t_spectrum, r_spectrum=r_spectrum, accumulator=accumulator
    )
    return _contour_outage(phi_at, Model.FULL, cfg, contour)


def outage_exact(scenario, cfg, accumulator='neumaier'):
    """
    Validates the scenario, folds any input covariance into the transmit
    spectrum and routes to the matching evaluator.
    """
    scenario = validate_scenario(scenario, cfg)
    scenario = absorb_power_allocation(scenario)
    scenario, cfg = interchange_normalize(scenario, cfg)
    if scenario.model is Model.INDEPENDENT:
        return outage_independent(cfg, accumulator)
    if scenario.model is Model.SEMI_RX:
        return outage_semi(cfg, scenario.r_spectrum, 'rx', accumulator)
    return outage_full(cfg, scenario.t_spectrum, scenario.r_spectrum, accumulator)
