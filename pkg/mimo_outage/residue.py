# -*- coding: utf-8 -*-
"""
Closed-form asymptotic kernels as sums of residues.

The kernels are contour integrals of x^s / (s * prod_t (s - t)^m_t) over
integer poles t >= 0, so they are finite sums of terms c * x^t * (ln x)^k.
Residues at multiple poles are expanded in exact rational arithmetic and
converted to floats only for evaluation.
"""

#
# Standard libraries
#

import functools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

#
# Third party libraries
#

import mpmath
import numpy as np

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, DomainError, EmptyPoleSet
from mimo_outage.permutations import permutation_table


log = logging.getLogger(__name__)

# Float evaluation is abandoned when the terms cancel by more than this.
CANCELLATION_LIMIT = 1e6
MP_DIGITS = 50


@dataclass(frozen=True)
class ResiduePolynomial:
    """
    sum of coeff * x^t * (ln x)^k over `exact` = ((t, k, Fraction), ...).

    `poles` holds the (t, multiplicity) structure of the integrand the
    polynomial came from, when it came from a single integrand.
    """
    exact: tuple
    poles: tuple = ()

    @classmethod
    def from_terms(cls, terms, poles=()):
        merged = {}
        for t, k, coeff in terms:
            merged[(t, k)] = merged.get((t, k), Fraction(0)) + Fraction(coeff)
        exact = tuple(sorted((t, k, c) for (t, k), c in merged.items() if c != 0))
        return cls(exact, tuple(poles))

    @property
    def terms(self):
        return tuple((t, k, float(c)) for t, k, c in self.exact)

    @property
    def degree(self):
        return max((t for t, _, _ in self.exact), default=0)

    @property
    def max_pole(self):
        return max((t for t, _ in self.poles), default=0)

    def scaled(self, factor):
        return ResiduePolynomial.from_terms(
            ((t, k, c * Fraction(factor)) for t, k, c in self.exact), self.poles
        )

    def __add__(self, other):
        return ResiduePolynomial.from_terms(self.exact + other.exact)

    def evaluate(self, x):
        return evaluate(self, x)

    def phi_at(self, w):
        """
        Mellin-side integrand for the contour engine: with s = w - 1 the
        engine's x^(-s) / -s * phi(w) is the kernel integrand reflected
        through s -> -s.
        """
        if not self.poles:
            raise EmptyPoleSet('Polynomial carries no pole structure')
        w = np.asarray(w, dtype=complex)
        value = np.ones(w.shape, dtype=complex)
        for t, multiplicity in self.poles:
            if t > 0:
                value = value / (1.0 - w - t) ** multiplicity
        return value


def _reciprocal_power_series(d, multiplicity, order):
    """
    Taylor coefficients in e of (d + e)^(-multiplicity), up to e^(order-1).
    """
    return [
        (-1) ** j * math.comb(multiplicity + j - 1, j) * Fraction(1) / Fraction(d) ** (multiplicity + j)
        for j in range(order)
    ]


def _multiply_series(left, right, order):
    product = [Fraction(0)] * order
    for i, a in enumerate(left[:order]):
        if a == 0:
            continue
        for j, b in enumerate(right[:order - i]):
            product[i + j] += a * b
    return product


def residue_terms(poles):
    """
    Residues of x^s / prod_p (s - p)^m_p at every pole, as exact terms.
    """
    poles = dict(poles)
    if not poles:
        raise EmptyPoleSet('No poles to sum residues over')
    terms = []
    for p, multiplicity in poles.items():
        series = [Fraction(1)] + [Fraction(0)] * (multiplicity - 1)
        for q, other in poles.items():
            if q != p:
                series = _multiply_series(series, _reciprocal_power_series(p - q, other, multiplicity), multiplicity)
        for k in range(multiplicity):
            coeff = series[multiplicity - 1 - k] / math.factorial(k)
            terms.append((p, k, coeff))
    return terms


def _kernel(multiplicities):
    poles = Counter({0: 1})
    poles.update(multiplicities)
    structure = tuple(sorted(poles.items()))
    return ResiduePolynomial.from_terms(residue_terms(structure), structure)


@functools.lru_cache(maxsize=None)
def _g_sigma_cached(sigma, tau, n_r):
    alphas = [tau + i + s for i, s in enumerate(sigma, start=1)]
    if any(alpha < 1 for alpha in alphas):
        raise EmptyPoleSet('Pole set is empty for alpha = {0}'.format(alphas))
    multiplicities = Counter()
    for alpha in alphas:
        multiplicities.update(range(1, alpha + 1))
    return _kernel(multiplicities)


def g_sigma(sigma, tau, n_r):
    """
    Kernel for one permutation sigma of {1..n_r}: poles t = 1..tau + i + sigma_i
    for each i, plus the simple pole at zero.
    """
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(1, n_r + 1)):
        raise ConfigError('{0} is not a permutation of 1..{1}'.format(sigma, n_r))
    return _g_sigma_cached(sigma, int(tau), int(n_r))


@functools.lru_cache(maxsize=None)
def _g_n_cached(n, n_t, n_r):
    multiplicities = Counter()
    for i, n_i in enumerate(n, start=1):
        multiplicities.update(range(i, n_t + i + n_i))
    return _kernel(multiplicities)


def g_n_full(n, cfg):
    """
    Kernel of the fully correlated asymptote: each Gamma ratio
    Gamma(s - n_t - i - n_i + 1) / Gamma(s - i + 1) contributes simple poles
    at t = i .. n_t + i + n_i - 1.
    """
    if cfg.n_t < cfg.n_r:
        raise ConfigError('Kernel needs n_t >= n_r; interchange the link ends first')
    n = tuple(int(v) for v in n)
    if len(n) != cfg.n_r or any(v < 0 for v in n):
        raise ConfigError('Index vector must hold {0} non-negative integers, got {1}'.format(cfg.n_r, n))
    return _g_n_cached(n, cfg.n_t, cfg.n_r)


def _factorial_norm(n_t, n_r):
    return math.prod(math.factorial(n_r - i) * math.factorial(n_t - i) for i in range(1, n_r + 1))


def _signed_weight(sigma, sign, tau):
    weight = sign
    for i, s in enumerate(sigma, start=1):
        weight *= math.factorial(tau + i + s - 1)
    return weight


@functools.lru_cache(maxsize=None)
def sigma_sum_polynomial(n_t, n_r):
    """
    sum_sigma sgn(sigma) prod_i Gamma(tau + i + sigma_i) g_sigma(x), divided by
    prod_i (n_r - i)! (n_t - i)!, combined exactly; n_t >= n_r.
    """
    tau = n_t - n_r - 1
    norm = _factorial_norm(n_t, n_r)
    total = ResiduePolynomial(())
    for sigma, sign in permutation_table(n_r):
        total = total + g_sigma(sigma, tau, n_r).scaled(Fraction(_signed_weight(sigma, sign, tau), norm))
    return total


def _evaluate_mp(poly, x):
    with mpmath.workdps(MP_DIGITS):
        x = mpmath.mpf(x)
        log_x = mpmath.log(x)
        total = mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * x ** t * log_x ** k for t, k, c in poly.exact
        )
        return float(total)


def evaluate(poly, x):
    """
    Value at x >= 1 with compensated summation, switching to 50-digit
    arithmetic when the terms cancel.
    """
    x = float(x)
    if x < 1.0:
        raise DomainError('Kernels are evaluated at x >= 1, got {0!r}'.format(x))
    if not poly.exact:
        return 0.0
    log_x = math.log(x)
    values = [c * x ** t * log_x ** k for t, k, c in poly.terms]
    total = math.fsum(values)
    magnitude = math.fsum(abs(v) for v in values)
    if magnitude > CANCELLATION_LIMIT * abs(total):
        log.debug('Residue terms cancel at x=%r (%.3g vs %.3g); using mpmath', x, magnitude, total)
        return _evaluate_mp(poly, x)
    return total


def g0_via_permutation_identity(cfg):
    """
    The permutation-sum route to g_0(2^R): each weighted g_sigma is
    evaluated on its own and the signed values added at high precision.
    """
    if cfg.n_t < cfg.n_r:
        raise ConfigError('Identity needs n_t >= n_r; interchange the link ends first')
    tau = cfg.tau
    x = cfg.threshold
    norm = _factorial_norm(cfg.n_t, cfg.n_r)
    with mpmath.workdps(MP_DIGITS):
        pieces = []
        for sigma, sign in permutation_table(cfg.n_r):
            kernel = g_sigma(sigma, tau, cfg.n_r)
            value = mpmath.fsum(
                mpmath.mpf(c.numerator) / c.denominator * mpmath.mpf(x) ** t * mpmath.log(x) ** k
                for t, k, c in kernel.exact
            )
            pieces.append(_signed_weight(sigma, sign, tau) * value)
        return float(mpmath.fsum(pieces) / norm)
