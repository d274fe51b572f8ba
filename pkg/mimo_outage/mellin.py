# -*- coding: utf-8 -*-
"""
Inverse Mellin transform along a vertical contour.

For a positive random variable G with Mellin transform phi(s) = E[G^(s-1)],
the distribution function is

    F(x) = 1/(2 pi) int (x^(-s) / -s) phi(s + 1) dt,    s = c + i t, c < 0.

Integrands are real on the real axis, so only t >= 0 is integrated and the
real part doubled. The final pass also evaluates t < 0 and records the
imaginary part left over the whole line. The engine treats phi as a black
box.
"""

#
# Standard libraries
#

import logging
import math
from collections import namedtuple

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.errors import ConfigError, DomainError, NumericalError
from mimo_outage.model import Model
from mimo_outage.special import GL_ORDER, gauss_legendre_panels


log = logging.getLogger(__name__)

ENGINE_RTOL = 1e-10
ENGINE_ATOL = 1e-13
INITIAL_HALF_HEIGHT = 40.0
MAX_HALF_HEIGHT = 5120.0
EXACT_ABSCISSA = -0.5

# Half periods of x^(-it) summed and accelerated beyond the head.
TAIL_HALF_PERIODS = 20

SYMMETRY_RTOL = 1e-8
# Imaginary part left over the full line, relative to the value.
IMAG_RTOL = 1e-10
_SYMMETRY_PROBES = (0.7, 3.1, 11.3)

PURPOSES = ('exact', 'asymptotic-check')


class MellinContour(namedtuple('MellinContour', ['c', 'half_height', 'nodes'])):
    """
    Vertical line Re(s) = c, integrated over |Im(s)| <= half_height with
    `nodes` Gauss-Legendre nodes on the initial half line.
    """

    def __new__(cls, c, half_height, nodes):
        if not c < 0:
            raise ConfigError('Contour abscissa must be negative, got {0!r}'.format(c))
        if not half_height > 0:
            raise ConfigError('Contour half height must be positive, got {0!r}'.format(half_height))
        if nodes < GL_ORDER or nodes % GL_ORDER:
            raise ConfigError('Contour nodes must be a positive multiple of {0}, got {1!r}'.format(GL_ORDER, nodes))
        return super(MellinContour, cls).__new__(cls, float(c), float(half_height), int(nodes))

    @property
    def panels(self):
        return self.nodes // GL_ORDER

    @property
    def panel_width(self):
        return self.half_height / self.panels

    def shifted(self, c):
        return MellinContour(c, self.half_height, self.nodes)


ContourIntegral = namedtuple('ContourIntegral', ['value', 'err', 'converged', 'history', 'imag_residual'])


def panel_width_for(x):
    """
    GL panel width on the t axis: at most a quarter period of x^(-it).
    """
    log_x = math.log(x)
    return min(1.0, 0.5 * math.pi / log_x) if log_x > 0 else 1.0


def choose_contour(model, cfg, purpose='exact'):
    """
    Contour for the CDF of the configured link at x = 2^R.

    Exact evaluation uses c = -0.5. Contours checking the asymptotic kernels
    must lie to the left of every kernel pole.
    """
    if purpose not in PURPOSES:
        raise ConfigError('Unknown contour purpose {0!r}, expected one of {1}'.format(purpose, PURPOSES))
    model = Model.parse(model)
    width = panel_width_for(cfg.threshold)
    nodes = GL_ORDER * int(math.ceil(INITIAL_HALF_HEIGHT / width))

    if purpose == 'exact':
        return MellinContour(EXACT_ABSCISSA, INITIAL_HALF_HEIGHT, nodes)

    tau, n, d = cfg.tau, cfg.n_min, cfg.diversity
    poles = -(tau + 2 * n)
    if model is Model.INDEPENDENT:
        c = poles
    elif model in (Model.SEMI_RX, Model.SEMI_TX):
        size = cfg.n_r if model is Model.SEMI_RX else cfg.n_t
        c = min(poles, (0.5 * size + tau + 1) * (size - 1) - d)
    else:
        c = min(poles, -d + 0.5 * n * (n - 1))
    return MellinContour(c - 0.5, INITIAL_HALF_HEIGHT, nodes)


def wynn_epsilon(partial_sums):
    """
    Limit of a sequence of partial sums by Wynn's epsilon algorithm.

    Returns (limit, error) where the error is the change between the last
    two even-column estimates.
    """
    sums = np.asarray(partial_sums, dtype=float)
    if sums.size < 3:
        err = abs(sums[-1] - sums[-2]) if sums.size == 2 else math.inf
        return float(sums[-1]), err

    lower = np.zeros(sums.size + 1)
    current = sums
    estimates = [float(sums[-1])]
    column = 0
    while current.size > 1:
        difference = np.diff(current)
        if np.any(difference == 0):
            break
        following = lower[1:current.size] + 1.0 / difference
        if not np.all(np.isfinite(following)):
            break
        lower, current = current, following
        column += 1
        if column % 2 == 0:
            estimates.append(float(current[-1]))

    if len(estimates) < 2:
        return float(sums[-1]), abs(float(sums[-1] - sums[-2]))
    return estimates[-1], abs(estimates[-1] - estimates[-2])


class _Integrand(object):

    def __init__(self, phi_at, x, c):
        self.phi_at = phi_at
        self.log_x = math.log(x)
        self.c = c

    def complex_value(self, t):
        s = self.c + 1j * np.asarray(t, dtype=float)
        return np.exp(-s * self.log_x) * np.asarray(self.phi_at(s + 1.0)) / (-s) / math.pi

    def __call__(self, t):
        return self.complex_value(t).real

    def integrate(self, lower, upper, panels):
        nodes, weights = gauss_legendre_panels(lower, upper, panels)
        return weights * self(nodes)

    def full_line(self, upper, panels):
        """
        Head integral over [0, upper] and the magnitude of the imaginary part
        of the integral over [-upper, upper], from one call of phi.
        """
        nodes, weights = gauss_legendre_panels(0.0, upper, panels)
        values = self.complex_value(np.concatenate([nodes, -nodes]))
        right, left = values[:nodes.size], values[nodes.size:]
        head = math.fsum(weights * right.real)
        residual = abs(0.5 * math.fsum(weights * (right.imag + left.imag)))
        return head, residual


def _probe_symmetry(integrand):
    t = np.asarray(_SYMMETRY_PROBES)
    w = integrand.c + 1.0 + 1j * t
    upper = np.asarray(integrand.phi_at(w))
    lower = np.asarray(integrand.phi_at(np.conj(w)))
    gap = np.abs(lower - np.conj(upper))
    if np.any(gap > SYMMETRY_RTOL * np.maximum(np.abs(upper), 1e-300)):
        raise NumericalError(
            'Integrand violates conjugate symmetry (worst gap {0:.3g})'.format(float(np.max(gap)))
        )


def _tail(integrand, start, width):
    """
    Integral beyond `start`: Wynn-accelerated half periods of x^(-it) when the
    oscillation is resolved, otherwise a power-law bound around zero.
    """
    period = math.pi / integrand.log_x if integrand.log_x > 0 else math.inf
    if period <= start:
        per = max(1, int(math.ceil(period / width)))
        end = start + TAIL_HALF_PERIODS * period
        contributions = integrand.integrate(start, end, per * TAIL_HALF_PERIODS)
        pieces = [math.fsum(row) for row in contributions.reshape(TAIL_HALF_PERIODS, -1)]
        return wynn_epsilon(np.cumsum(pieces))

    near = float(np.abs(integrand.complex_value(0.5 * start)))
    far = float(np.abs(integrand.complex_value(start)))
    if far == 0.0:
        return 0.0, 0.0
    exponent = math.log(near / far) / math.log(2.0) if near > 0 else 0.0
    if exponent > 1.0:
        return 0.0, far * start / (exponent - 1.0)
    return 0.0, far * start


def inverse_mellin_cdf(phi_at, x, contour, rtol=ENGINE_RTOL, atol=ENGINE_ATOL, max_half_height=MAX_HALF_HEIGHT):
    """
    F(x) from the Mellin transform `phi_at` (a vectorised callable of s).

    Each round doubles the half height, reusing the panels already
    integrated. The round with the smallest error (tail error or change from
    the previous round) is kept and its head re-integrated at doubled node
    density for the quadrature error. Non-convergence is reported through
    the `converged` flag, not raised.
    """
    if not x > 0:
        raise DomainError('CDF argument must be positive, got {0!r}'.format(x))

    integrand = _Integrand(phi_at, x, contour.c)
    _probe_symmetry(integrand)

    width = contour.panel_width
    half_height = contour.half_height
    covered = 0.0
    head = []
    history = []
    best = None
    previous = None

    while True:
        extra = int(round((half_height - covered) / width))
        if extra > 0:
            head.append(integrand.integrate(covered, covered + extra * width, extra))
            covered += extra * width
        head_value = math.fsum(np.concatenate(head))
        tail_value, tail_err = _tail(integrand, covered, width)
        value = head_value + tail_value
        delta = abs(value - previous) if previous is not None else math.inf
        round_err = max(tail_err, delta)
        history.append(min(history[-1], round_err) if history else round_err)
        if best is None or round_err <= best[1]:
            best = (value, round_err, covered, head_value, tail_value)
        log.debug('Contour round T=%g: value=%.15g err=%.3g', covered, value, round_err)

        if round_err <= rtol * abs(value) + atol or 2.0 * half_height > max_half_height:
            break
        previous = value
        half_height *= 2.0

    _, best_err, best_covered, best_head, best_tail = best
    panels = int(round(best_covered / width))
    fine_head, residual = integrand.full_line(best_covered, 2 * panels)
    value = fine_head + best_tail
    err = best_err + abs(fine_head - best_head)
    converged = err <= rtol * abs(value) + atol
    if not converged:
        log.warning('Contour integral at x=%r not converged: value=%.15g err=%.3g', x, value, err)
    if residual > IMAG_RTOL * abs(value) + atol:
        log.warning('Contour integral at x=%r keeps an imaginary part %.3g against %.15g', x, residual, value)
        converged = False
    return ContourIntegral(value, err, converged, tuple(history), residual)
