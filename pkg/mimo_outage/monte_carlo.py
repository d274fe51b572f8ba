# -*- coding: utf-8 -*-
"""
Monte Carlo outage oracle for Kronecker-correlated Rayleigh channels.

Draws come from a Philox counter-based generator keyed by the seed, with the
counter derived from the sample index, so a sample's channel does not
depend on how the run is split into chunks or on the worker count.
"""

#
# Standard libraries
#

import logging
import math
import os
from dataclasses import dataclass

#
# Third party libraries
#

import numpy as np
from eventlet import greenpool

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, DimensionMismatch
from mimo_outage.model import ChannelScenario, EigenSpectrum, Method, Model, OutageResult, validate_scenario


log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 10 ** 6
DEFAULT_SEED = 7
CHUNK_SIZE = 2 ** 15
DEFAULT_WORKERS = 4
THREADS_ENV = 'MIMO_OUTAGE_THREADS'

# Philox emits four 64-bit words per counter step.
_WORDS_PER_STEP = 4


def worker_count():
    value = os.environ.get(THREADS_ENV)
    if not value:
        return DEFAULT_WORKERS
    try:
        count = int(value)
    except ValueError:
        raise ConfigError('{0} must be a positive integer, got {1!r}'.format(THREADS_ENV, value))
    if count < 1:
        raise ConfigError('{0} must be a positive integer, got {1!r}'.format(THREADS_ENV, value))
    return count


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    std_err: float
    n_samples: int
    seed: int
    hits: int

    @classmethod
    def from_hits(cls, hits, n_samples, seed):
        p_hat = hits / n_samples
        return cls(p_hat, math.sqrt(p_hat * (1.0 - p_hat) / n_samples), n_samples, seed, hits)

    def interval(self, sigmas=3.0):
        return self.p_hat - sigmas * self.std_err, self.p_hat + sigmas * self.std_err

    def contains(self, value, sigmas=3.0):
        low, high = self.interval(sigmas)
        return low <= value <= high

    def result(self):
        return OutageResult(self.p_hat, Method.MONTE_CARLO, self.std_err)


def hermitian_sqrt(matrix):
    """
    Principal square root of a Hermitian positive semi-definite matrix.
    """
    matrix = np.asarray(matrix)
    values, vectors = np.linalg.eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def effective_tx_correlation(t, x):
    """
    Spectrum of R_t^(1/2) R_x R_t^(1/2).

    Eigen spectra are taken as diagonal in a shared basis and multiplied
    elementwise; explicit matrices go through a Hermitian eigen-solve.
    """
    if isinstance(t, EigenSpectrum) and isinstance(x, EigenSpectrum):
        if t.n != x.n:
            raise DimensionMismatch('Transmit spectra lengths differ: {0} and {1}'.format(t.n, x.n))
        if x.identity:
            return t
        if t.identity:
            return EigenSpectrum.free(x.values)
        return EigenSpectrum.free([a * b for a, b in zip(t.values, x.values)])

    t_matrix = np.diag(t.values) if isinstance(t, EigenSpectrum) else np.asarray(t)
    x_matrix = np.diag(x.values) if isinstance(x, EigenSpectrum) else np.asarray(x)
    if t_matrix.shape != x_matrix.shape or t_matrix.shape[0] != t_matrix.shape[-1]:
        raise DimensionMismatch(
            'Transmit matrices have shapes {0} and {1}'.format(t_matrix.shape, x_matrix.shape)
        )
    root = hermitian_sqrt(t_matrix)
    effective = root @ x_matrix @ root
    return EigenSpectrum.free(np.linalg.eigvalsh(0.5 * (effective + effective.conj().T)))


def absorb_power_allocation(scenario):
    """
    Scenario with the input covariance folded into the transmit spectrum.
    """
    if not scenario.power_allocated:
        return scenario
    t = effective_tx_correlation(scenario.t_spectrum, scenario.x_spectrum)
    model = Model.from_sides(not t.identity, not scenario.r_spectrum.identity)
    log.debug('Absorbed input covariance: effective transmit spectrum %s', t)
    return ChannelScenario(model, t, scenario.r_spectrum, EigenSpectrum.identity_of(t.n))


def _width(cfg):
    # uniforms per sample, padded to whole Philox blocks
    return _WORDS_PER_STEP * int(math.ceil(2 * cfg.n_r * cfg.n_t / _WORDS_PER_STEP))


def _mixing(scenario, r_matrix=None, t_matrix=None):
    left = hermitian_sqrt(r_matrix) if r_matrix is not None else np.diag(np.sqrt(scenario.r_spectrum.values))
    right = hermitian_sqrt(t_matrix) if t_matrix is not None else np.diag(np.sqrt(scenario.t_spectrum.values))
    return left, right


def sample_channels(scenario, cfg, seed, start, count, r_matrix=None, t_matrix=None):
    """
    Channels for sample indices start .. start + count - 1, shape
    (count, n_r, n_t).
    """
    width = _width(cfg)
    generator = np.random.Generator(
        np.random.Philox(counter=start * width // _WORDS_PER_STEP, key=seed)
    )
    uniforms = generator.random((count, width))
    size = cfg.n_r * cfg.n_t
    magnitude = np.sqrt(-np.log1p(-uniforms[:, :size]))
    phase = np.exp(2j * math.pi * uniforms[:, size:2 * size])
    white = (magnitude * phase).reshape(count, cfg.n_r, cfg.n_t)
    left, right = _mixing(scenario, r_matrix, t_matrix)
    return left @ white @ right


def sample_channel(scenario, cfg, seed, index=0):
    return sample_channels(scenario, cfg, seed, index, 1)[0]


def mutual_information(h, rho, x_spectrum=None):
    """
    log2 det(I + rho H diag(x) H^H) through a Cholesky factor. Accepts a
    single matrix or a stack of them.
    """
    h = np.asarray(h, dtype=complex)
    if x_spectrum is not None:
        x = np.asarray(x_spectrum.values if isinstance(x_spectrum, EigenSpectrum) else x_spectrum)
        if x.shape[0] != h.shape[-1]:
            raise DimensionMismatch(
                'Input covariance has {0} eigenvalues, channel has {1} columns'.format(x.shape[0], h.shape[-1])
            )
        h = h * np.sqrt(x)
    gram = np.eye(h.shape[-2]) + rho * (h @ np.conj(np.swapaxes(h, -1, -2)))
    factor = np.linalg.cholesky(gram)
    diagonal = np.diagonal(factor, axis1=-2, axis2=-1).real
    bits = 2.0 * np.sum(np.log2(diagonal), axis=-1)
    if np.ndim(bits) == 0:
        return float(bits)
    return bits


def _count_outages(scenario, cfg, seed, start, count, r_matrix, t_matrix):
    channels = sample_channels(scenario, cfg, seed, start, count, r_matrix, t_matrix)
    rates = mutual_information(channels, cfg.rho, scenario.x_spectrum)
    return int(np.count_nonzero(rates < cfg.rate))


def estimate_outage(scenario, cfg, n_samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED,
                    r_matrix=None, t_matrix=None, workers=None, chunk_size=CHUNK_SIZE):
    """
    Fraction of channel draws whose mutual information falls below the rate.

    `r_matrix` / `t_matrix` replace the diagonal correlation with explicit
    matrices (same spectra assumed). The result is identical for every
    worker count and chunk size.
    """
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or n_samples < 1:
        raise ConfigError('Monte Carlo needs at least one sample, got {0!r}'.format(n_samples))
    n_samples = int(n_samples)
    scenario = validate_scenario(scenario, cfg)
    workers = worker_count() if workers is None else workers

    starts = range(0, n_samples, chunk_size)

    def run(start):
        return _count_outages(scenario, cfg, seed, start, min(chunk_size, n_samples - start), r_matrix, t_matrix)

    pool = greenpool.GreenPool(workers)
    hits = sum(pool.imap(run, starts))
    estimate = McEstimate.from_hits(hits, n_samples, seed)
    log.info(
        'Monte Carlo %s outage at %gx%g, R=%g, %g dB: %.6g +- %.2g (%d samples, seed %d)',
        scenario.model.value, cfg.n_t, cfg.n_r, cfg.rate, cfg.snr_db,
        estimate.p_hat, estimate.std_err, n_samples, seed,
    )
    return estimate
