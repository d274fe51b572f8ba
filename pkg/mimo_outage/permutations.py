# -*- coding: utf-8 -*-
"""
Permutation tables for the Leibniz-style sums over S_N, and the compensated
accumulators used to add their signed, nearly cancelling terms.
"""

#
# Standard libraries
#

import functools
import itertools
import math

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, PermutationBudgetExceeded


# Largest N whose N! terms are summed (720 terms).
PERMUTATION_LIMIT = 6

ACCUMULATORS = ('neumaier', 'double-double')


def _parity(sigma):
    inversions = sum(
        1 for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j]
    )
    return -1 if inversions % 2 else 1


class PermutationTable(object):
    """
    All permutations of {1, ..., n} with their signs.

    `sigmas` holds them 1-based as in the formulas, `indices` 0-based for
    numpy fancy indexing.
    """

    def __init__(self, n):
        self.n = n
        self.entries = tuple(
            (sigma, _parity(sigma))
            for sigma in itertools.permutations(range(1, n + 1))
        )
        self.sigmas = np.array([sigma for sigma, _ in self.entries], dtype=int).reshape(len(self.entries), n)
        self.indices = self.sigmas - 1
        self.signs = np.array([sign for _, sign in self.entries], dtype=float)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@functools.lru_cache(maxsize=None)
def _table(n):
    return PermutationTable(n)


def permutation_table(n, limit=PERMUTATION_LIMIT):
    if n < 1:
        raise ConfigError('Permutation size must be positive, got {0}'.format(n))
    if n > limit:
        raise PermutationBudgetExceeded(
            'Permutation sums over S_{0} ({1} terms) exceed the supported size S_{2}'.format(
                n, math.factorial(n), limit)
        )
    return _table(n)


def _neumaier(rows):
    total = rows[0].copy()
    compensation = np.zeros_like(total)
    for row in rows[1:]:
        updated = total + row
        big = np.abs(total) >= np.abs(row)
        compensation += np.where(big, (total - updated) + row, (row - updated) + total)
        total = updated
    return total + compensation


def _double_double(rows):
    high = np.zeros_like(rows[0])
    low = np.zeros_like(rows[0])
    for row in rows:
        # two-sum of high and row
        summed = high + row
        virtual = summed - high
        error = (high - (summed - virtual)) + (row - virtual)
        low = low + error
        # renormalise (fast two-sum)
        high = summed + low
        low = low - (high - summed)
    return high + low


def _sorted_rows(rows):
    order = np.argsort(-np.abs(rows), axis=0, kind='stable')
    return np.take_along_axis(rows, order, axis=0)


def compensated_sum(terms, accumulator='neumaier'):
    """
    Sum over the first axis of `terms`, largest magnitudes first.

    Complex terms are accumulated on the real and imaginary parts
    separately. The result is independent of how the caller chunked the
    remaining axes.
    """
    if accumulator not in ACCUMULATORS:
        raise ConfigError('Unknown accumulator {0!r}, expected one of {1}'.format(accumulator, ACCUMULATORS))
    terms = np.asarray(terms)
    if terms.shape[0] == 0:
        return np.zeros(terms.shape[1:], dtype=terms.dtype)
    kernel = _neumaier if accumulator == 'neumaier' else _double_double
    if np.iscomplexobj(terms):
        real = kernel(_sorted_rows(terms.real))
        imag = kernel(_sorted_rows(terms.imag))
        return real + 1j * imag
    return kernel(_sorted_rows(terms.astype(float)))


def leibniz_determinant(entries, accumulator='neumaier'):
    """
    Determinant of a stack of square matrices by the permutation expansion.

    `entries` has shape (n, n, ...) with the trailing axes vectorised; the
    expansion is used instead of LU so the signed terms can be summed with
    compensation.
    """
    entries = np.asarray(entries)
    n = entries.shape[0]
    table = permutation_table(n)
    rows = np.arange(n)
    terms = np.empty((len(table),) + entries.shape[2:], dtype=np.result_type(entries, float))
    for k, sigma in enumerate(table.indices):
        terms[k] = table.signs[k] * np.prod(entries[rows, sigma], axis=0)
    return compensated_sum(terms, accumulator)
