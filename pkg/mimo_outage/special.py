# -*- coding: utf-8 -*-
"""
Complex special functions for the Mellin-Barnes integrands: log-gamma,
Pochhammer symbols, Tricomi's confluent hypergeometric function with a
complex second argument, and the Xi factor built from it.

All functions accept numpy arrays for the complex argument and return arrays
of the same shape; Python scalars in give Python scalars out.
"""

#
# Standard libraries
#

import logging
import math

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.errors import DomainError, InvalidDegenerateParameters, PoleAtNonpositiveInteger


log = logging.getLogger(__name__)

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFICIENTS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    .33994649984811888699e-4,
    .46523628927048575665e-4,
    -.98374475304879564677e-4,
    .15808870322491248884e-3,
    -.21026444172410488319e-3,
    .21743961811521264320e-3,
    -.16431810653676389022e-3,
    .84418223983852743293e-4,
    -.26190838401581408670e-4,
    .36899182659531622704e-5,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

GL_ORDER = 16
GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)

PSI_RTOL = 1e-11
PSI_MAX_NODES = 2 ** 16
PSI_SERIES_TERMS = 4096

# 1F1 sums grow like e^z and overflow past this.
PSI_SERIES_MAX_Z = 600.0
_PSI_INTEGER_TOL = 1e-6
_EPS = np.finfo(float).eps

# Integrand cut where it has fallen this far (natural log) below its peak.
_PSI_LOG_DROP = 46.0
_PSI_CUTOFF_MARGIN = 0.5
_PSI_PANEL_WIDTH = 0.25
_PSI_CHUNK = 2 ** 21

# Rounding floor of the scaled integrand (peak normalised to 1).
_PSI_NOISE = 1e-15


def _as_complex(z):
    scalar = np.ndim(z) == 0
    return np.asarray(z, dtype=complex), scalar


def _unwrap(result, scalar):
    if scalar:
        return complex(result.reshape(()))
    return result


def _wrap_phase(value):
    return value.real + 1j * (np.mod(value.imag + math.pi, 2.0 * math.pi) - math.pi)


def _ln_gamma_right(z):
    # Lanczos sum for Re(z) >= 0.5
    series = np.full(z.shape, _LANCZOS_COEFFICIENTS[0], dtype=complex)
    for k, coefficient in enumerate(_LANCZOS_COEFFICIENTS[1:], start=1):
        series = series + coefficient / (z + k)
    shifted = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * np.log(shifted) - shifted + np.log(series) - np.log(z)


def _log_sin_pi(z):
    """
    log sin(pi z) without overflow for large |Im z|.
    """
    turns = np.round(z.real)
    x = z.real - turns
    y = np.abs(z.imag)
    u = x + 1j * y
    value = -1j * math.pi * u + np.log(np.expm1(2j * math.pi * u) / 2j)
    value = np.where(z.imag < 0, np.conj(value), value)
    return value + 1j * math.pi * turns


def ln_gamma(z):
    """
    Principal branch of log Gamma(z); the imaginary part is reduced to
    [-pi, pi).
    """
    z, scalar = _as_complex(z)
    poles = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(poles):
        raise PoleAtNonpositiveInteger(
            'Gamma has a pole at {0}'.format(z[poles].real.ravel()[0])
        )

    result = np.empty(z.shape, dtype=complex)
    right = z.real >= 0.5
    if np.any(right):
        result[right] = _ln_gamma_right(z[right])
    if np.any(~right):
        w = z[~right]
        result[~right] = _LOG_PI - _log_sin_pi(w) - _ln_gamma_right(1.0 - w)
    return _unwrap(_wrap_phase(result), scalar)


def gamma(z):
    z, scalar = _as_complex(z)
    return _unwrap(np.exp(ln_gamma(z)), scalar)


def pochhammer(x, n):
    """
    Rising factorial (x)_n = x (x+1) ... (x+n-1).
    """
    if n < 0 or int(n) != n:
        raise DomainError('Pochhammer index must be a non-negative integer, got {0!r}'.format(n))
    result = np.ones_like(np.asarray(x), dtype=np.result_type(x, float))
    for k in range(int(n)):
        result = result * (x + k)
    if np.ndim(result) == 0:
        return result.item()
    return result


def gauss_legendre_panels(lower, upper, panels):
    """
    Nodes and weights of a composite GL_ORDER-point rule on `panels` equal
    panels of [lower, upper].
    """
    edges = np.linspace(lower, upper, panels + 1)
    half = 0.5 * np.diff(edges)
    middle = 0.5 * (edges[1:] + edges[:-1])
    nodes = (middle[:, None] + half[:, None] * GL_NODES[None, :]).ravel()
    weights = (half[:, None] * GL_WEIGHTS[None, :]).ravel()
    return nodes, weights


class _PsiIntegrand(object):
    """
    Log of the Psi integrand after t = e^v - 1, optionally with v = u^(1/a)
    to remove the v^(a-1) endpoint behaviour for non-integer a.
    """

    def __init__(self, a, z):
        self.a = a
        self.z = z
        self.substituted = a != round(a)

    def variable(self, u):
        return u ** (1.0 / self.a) if self.substituted else u

    def upper(self, v_cutoff):
        return v_cutoff ** self.a if self.substituted else v_cutoff

    def log_value(self, u, b):
        a = self.a
        v = self.variable(u)
        growth = np.expm1(v)
        value = -self.z * growth + (b - a) * v
        if self.substituted:
            value = value + (a - 1.0) * np.log(growth / v) - math.log(a)
        elif a != 1:
            value = value + (a - 1.0) * np.log(growth)
        return value

    def scan(self, re_b):
        """
        Upper limit in v and the peak of the real log-integrand.
        """
        span = 1.0
        while True:
            v = np.linspace(0.0, span, 257)[1:]
            value = self.log_value(v ** self.a if self.substituted else v, re_b)
            top = int(np.argmax(value))
            peak = float(value[top])
            beyond = np.nonzero(value[top:] < peak - _PSI_LOG_DROP)[0]
            if beyond.size:
                return float(v[top + beyond[0]]) + _PSI_CUTOFF_MARGIN, peak
            span *= 2.0
            if span > 2.0 ** 12:
                raise DomainError(
                    'Psi integrand does not decay: a={0!r}, Re(b)={1!r}, z={2!r}'.format(self.a, re_b, self.z)
                )


def _psi_group(integrand, b, upper, panels, shift):
    """
    Integrates one group of b values sharing the cutoff, refining by panel
    doubling. Returns scaled values, errors and convergence flags.
    """
    values = np.zeros(b.shape, dtype=complex)
    errors = np.full(b.shape, np.inf)
    converged = np.zeros(b.shape, dtype=bool)
    pending = np.arange(b.size)
    cap = max(PSI_MAX_NODES, 2 * panels * GL_ORDER)
    previous = None

    while True:
        nodes, weights = gauss_legendre_panels(0.0, upper, panels)
        step = max(1, _PSI_CHUNK // nodes.size)
        estimate = np.empty(pending.size, dtype=complex)
        for start in range(0, pending.size, step):
            chunk = b[pending[start:start + step]]
            exponent = integrand.log_value(nodes[None, :], chunk[:, None]) - shift
            estimate[start:start + step] = np.exp(exponent) @ weights
        values[pending] = estimate
        if previous is None:
            previous = estimate
        else:
            delta = np.abs(estimate - previous)
            errors[pending] = delta
            done = delta <= PSI_RTOL * np.abs(estimate) + _PSI_NOISE * upper
            converged[pending[done]] = True
            pending, previous = pending[~done], estimate[~done]
            if not pending.size or 2 * panels * GL_ORDER > cap:
                break
        panels *= 2
    return values, errors, converged


def kummer_series(a, b, z, terms=PSI_SERIES_TERMS):
    """
    Kummer's 1F1(a; b; z) by its power series for complex arrays a, b and
    real z.

    Returns the sum, the sum of the term magnitudes (the rounding scale of
    the sum) and a per-point convergence flag.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    term = np.ones(a.shape, dtype=complex)
    total = term.copy()
    scale = np.ones(a.shape)
    converged = np.zeros(a.shape, dtype=bool)
    with np.errstate(over='ignore', invalid='ignore'):
        for n in range(terms):
            ratio = (a + n) / (b + n) * (z / (n + 1.0))
            term = term * ratio
            total = total + term
            size = np.abs(term)
            scale = scale + size
            # past the largest term and past the closest approach of b + n to zero
            tail = (n + 1.0 > 2.0 * abs(z)) & (n + b.real > 0) & (np.abs(ratio) < 0.5)
            converged |= tail & (size <= _EPS * scale)
            if converged.all():
                break
    return total, scale, converged


def _psi_two_term(a, b, z):
    """
    Psi(a, b; z) = Gamma(1-b)/Gamma(a-b+1) M(a, b, z)
                   + Gamma(b-1)/Gamma(a) z^(1-b) M(a-b+1, 2-b, z)

    for b away from the integers, with an absolute error bound from the size
    of the two (possibly cancelling) terms.
    """
    log_z = math.log(z)
    with np.errstate(over='ignore', invalid='ignore'):
        if a == round(a):
            first = 1.0 / pochhammer(1.0 - b, int(round(a)))
            first_log_err = _EPS * a
        else:
            upper, lower = ln_gamma(1.0 - b), ln_gamma(a - b + 1.0)
            first = np.exp(upper - lower)
            first_log_err = _EPS * (np.abs(upper) + np.abs(lower))
        log_gamma_b = ln_gamma(b - 1.0)
        log_second = log_gamma_b + (1.0 - b) * log_z - math.lgamma(a)
        second = np.exp(log_second)
        second_log_err = _EPS * (np.abs(log_gamma_b) + np.abs(log_second) + 1.0)

        m_first, scale_first, ok_first = kummer_series(a, b, z)
        m_second, scale_second, ok_second = kummer_series(a - b + 1.0, 2.0 - b, z)
        value = first * m_first + second * m_second
        rounding = (4.0 + 3.0 * z) * _EPS
        err = (
            np.abs(first) * (rounding * scale_first + np.abs(m_first) * first_log_err)
            + np.abs(second) * (rounding * scale_second + np.abs(m_second) * second_log_err)
        )
    converged = ok_first & ok_second & np.isfinite(value) & np.isfinite(err)
    return value, err, converged


def _near_integer(values):
    return np.abs(values - np.round(values.real)) < _PSI_INTEGER_TOL


def _psi_quadrature(a, b, z):
    """
    Psi at the b points the series cannot take, by quadrature of the
    integral representation.
    """
    values = np.empty(b.shape, dtype=complex)
    errors = np.empty(b.shape)
    converged = np.empty(b.shape, dtype=bool)
    integrand = _PsiIntegrand(a, z)
    log_gamma_a = math.lgamma(a)

    for re_b in np.unique(b.real):
        on_line = np.nonzero(b.real == re_b)[0]
        v_cutoff, peak = integrand.scan(re_b)
        upper = integrand.upper(v_cutoff)
        decay = z + abs(re_b - a) + 1.0
        widths = np.minimum(
            min(_PSI_PANEL_WIDTH, 4.0 / decay),
            math.pi / np.maximum(np.abs(b[on_line].imag), 1e-300),
        )
        wanted = np.ceil(upper / widths).astype(int)
        panels = 2 ** np.ceil(np.log2(np.maximum(wanted, 1))).astype(int)
        for count in np.unique(panels):
            members = on_line[panels == count]
            group_values, group_errors, group_converged = _psi_group(
                integrand, b[members], upper, int(count), peak
            )
            scale = math.exp(peak - log_gamma_a)
            values[members] = group_values * scale
            errors[members] = group_errors * scale
            converged[members] = group_converged
    return values, errors, converged


def tricomi_psi(a, b, z, full_output=False):
    """
    Tricomi's confluent hypergeometric function

        Psi(a, b; z) = 1/Gamma(a) * int_0^inf e^(-z t) t^(a-1) (1+t)^(b-a-1) dt

    for real a > 0, complex b (array) and real z > 0.

    Points are summed through Kummer's two-term form, which costs the same
    for any |Im b|. Points where that form cancels beyond PSI_RTOL, and b on
    or near the integers, go to composite Gauss-Legendre quadrature of the
    integral refined by panel doubling.

    With `full_output` the absolute error estimate and a convergence flag
    are returned with the value.
    """
    a = float(a)
    z = float(z)
    if not a > 0:
        raise DomainError('Psi needs a > 0, got {0!r}'.format(a))
    if not z > 0:
        raise DomainError('Psi needs z > 0, got {0!r}'.format(z))

    b, scalar = _as_complex(b)
    flat = b.ravel()
    values = np.zeros(flat.shape, dtype=complex)
    errors = np.full(flat.shape, np.inf)
    converged = np.zeros(flat.shape, dtype=bool)

    series = ~_near_integer(flat)
    if a != round(a):
        series &= ~_near_integer(a - flat + 1.0)
    if z > PSI_SERIES_MAX_Z:
        series[:] = False
    if np.any(series):
        members = np.nonzero(series)[0]
        series_values, series_errors, series_ok = _psi_two_term(a, flat[members], z)
        accepted = series_ok & (series_errors <= PSI_RTOL * np.abs(series_values))
        members = members[accepted]
        values[members] = series_values[accepted]
        errors[members] = series_errors[accepted]
        converged[members] = True

    rest = np.nonzero(~converged)[0]
    if rest.size:
        values[rest], errors[rest], converged[rest] = _psi_quadrature(a, flat[rest], z)
    log.debug('Psi(a=%r, z=%r): %d of %d points by quadrature', a, z, rest.size, flat.size)

    if not np.all(converged):
        log.warning(
            'Psi quadrature not converged for %d of %d points (a=%r, z=%r, worst error %.3g)',
            int(np.sum(~converged)), converged.size, a, z, float(np.max(errors[~converged])),
        )

    values = values.reshape(b.shape)
    if full_output:
        errors = errors.reshape(b.shape)
        converged = converged.reshape(b.shape)
        if scalar:
            return complex(values), float(errors), bool(converged)
        return values, errors, converged
    return _unwrap(values, scalar)


def xi(a, alpha, big_a, phi, s):
    """
    Xi(a, alpha, A, phi) at s: A^(b-1) Psi(phi, b; A) with b = phi + a + alpha s,
    and Gamma(a - s) in the degenerate case A = 0, alpha = -1, phi = 1.
    """
    s, scalar = _as_complex(s)
    if big_a == 0:
        if alpha != -1 or phi != 1:
            raise InvalidDegenerateParameters(
                'Xi with A = 0 needs alpha = -1 and phi = 1, got alpha={0!r}, phi={1!r}'.format(alpha, phi)
            )
        return _unwrap(np.asarray(gamma(a - s)), scalar)
    if big_a < 0:
        raise DomainError('Xi needs A >= 0, got {0!r}'.format(big_a))
    b = phi + a + alpha * s
    value = np.exp((b - 1.0) * math.log(big_a)) * tricomi_psi(phi, b, big_a)
    return _unwrap(np.asarray(value), scalar)
