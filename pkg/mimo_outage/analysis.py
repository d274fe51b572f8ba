# -*- coding: utf-8 -*-
"""
Structural properties of the outage formulas as executable checks:
majorization of eigenvalue vectors, the reduction of double permutation
sums, convexity of rate kernels and the embedding of the independent and
semi-correlated asymptotes in the fully correlated one.

Every check returns a CheckRecord.
"""

#
# Standard libraries
#

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.asymptotic import asym_full, asym_independent, asym_semi
from mimo_outage.errors import ConfigError, LengthMismatch
from mimo_outage.model import EigenSpectrum
from mimo_outage.permutations import permutation_table


log = logging.getLogger(__name__)

MAJORIZATION_ATOL = 1e-9
CONVEXITY_TOL = 1e-9
EMBEDDING_RTOL = 1e-9
REDUCTION_LIMIT = 4


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    detail: str = ''
    measured: float = None
    tolerance: float = None

    def as_dict(self):
        return {
            'name': self.name,
            'passed': self.passed,
            'detail': self.detail,
            'measured': self.measured,
            'tolerance': self.tolerance,
        }


def majorizes(v1, v2, atol=MAJORIZATION_ATOL):
    """
    True when v1 is majorized by v2: every partial sum of the largest k
    entries of v1 is at most that of v2, with equal totals.
    """
    v1 = np.sort(np.asarray(v1, dtype=float))[::-1]
    v2 = np.sort(np.asarray(v2, dtype=float))[::-1]
    if v1.shape != v2.shape:
        raise LengthMismatch('Cannot compare vectors of lengths {0} and {1}'.format(v1.size, v2.size))
    prefix_1, prefix_2 = np.cumsum(v1), np.cumsum(v2)
    if abs(prefix_1[-1] - prefix_2[-1]) > atol:
        return False
    return bool(np.all(prefix_1[:-1] <= prefix_2[:-1] + atol))


def majorization_chain(vectors, atol=MAJORIZATION_ATOL):
    """
    True when each vector is majorized by the next one.
    """
    return all(majorizes(a, b, atol) for a, b in zip(vectors, vectors[1:]))


def _random_matrix(n, rng):
    return [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]


def _exact_determinant(matrix):
    n = len(matrix)
    return sum(
        sign * math.prod(matrix[i][sigma[i] - 1] for i in range(n))
        for sigma, sign in permutation_table(n)
    )


def sum_reduction_check(n, trials=100, seed=0):
    """
    For eta(s1, s2) = prod_i h[s1_i][s2_i] with random integer h, the double
    signed sum over pairs of permutations equals n! times the single sum
    with the second permutation fixed to the identity. Rational arithmetic,
    so equality is exact.
    """
    if n < 1 or n > REDUCTION_LIMIT:
        raise ConfigError('Reduction check supports 1 <= n <= {0}, got {1}'.format(REDUCTION_LIMIT, n))
    rng = random.Random(seed)
    table = permutation_table(n)
    identity = tuple(range(1, n + 1))
    failures = 0
    for _ in range(trials):
        h = _random_matrix(n, rng)

        def eta(first, second):
            return math.prod(h[a - 1][b - 1] for a, b in zip(first, second))

        double = sum(s1 * s2 * eta(p1, p2) for p1, s1 in table for p2, s2 in table)
        single = sum(sign * eta(sigma, identity) for sigma, sign in table)
        if double != math.factorial(n) * single or single != _exact_determinant(h):
            failures += 1
    return CheckRecord(
        'sum-reduction', failures == 0,
        'n={0}: {1} of {2} random product-form trials failed'.format(n, failures, trials),
        float(failures), 0.0,
    )


def convexity_scan(kernel, r_grid, tol=CONVEXITY_TOL, name='convexity'):
    """
    Strictly increasing with non-negative second differences (down to
    -tol relative) on the grid.
    """
    grid = np.asarray(r_grid, dtype=float)
    if grid.size < 3:
        raise ConfigError('Convexity scan needs at least three grid points')
    values = np.array([kernel(r) for r in grid])
    first = np.diff(values)
    second = values[2:] - 2.0 * values[1:-1] + values[:-2]
    scale = np.maximum(1.0, np.abs(values[1:-1]))
    worst = float(np.min(second / scale))
    increasing = bool(np.all(first > 0))
    passed = increasing and worst >= -tol
    detail = 'increasing={0}, worst scaled second difference {1:.3g} over {2} points'.format(
        increasing, worst, grid.size)
    return CheckRecord(name, passed, detail, worst, -tol)


def probe_spectrum(n):
    """
    Distinct trace-normalised spectrum n k / sum(k), k = n .. 1.
    """
    weights = list(range(n, 0, -1))
    return EigenSpectrum.correlation([n * w / sum(weights) for w in weights])


def _relative_gap(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def special_case_embedding_check(cfg, rtol=EMBEDDING_RTOL):
    """
    The fully correlated asymptote with identity spectra reproduces the
    independent one; with one identity side it reproduces the
    semi-correlated one. The two sides use independent kernel routes.
    """
    identity_t = EigenSpectrum.identity_of(cfg.n_t)
    identity_r = EigenSpectrum.identity_of(cfg.n_r)
    r_probe, t_probe = probe_spectrum(cfg.n_r), probe_spectrum(cfg.n_t)
    gaps = [
        _relative_gap(asym_full(cfg, identity_t, identity_r).raw_value, asym_independent(cfg).raw_value),
        _relative_gap(asym_full(cfg, identity_t, r_probe).raw_value, asym_semi(cfg, r_probe, 'rx').raw_value),
        _relative_gap(asym_full(cfg, t_probe, identity_r).raw_value, asym_semi(cfg, t_probe, 'tx').raw_value),
    ]
    worst = max(gaps)
    return CheckRecord(
        'embedding', worst <= rtol,
        '{0}x{1}: worst relative gap {2:.3g}'.format(cfg.n_t, cfg.n_r, worst),
        worst, rtol,
    )
