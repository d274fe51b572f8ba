# -*- coding: utf-8 -*-
"""
Domain types shared by every evaluator: the link configuration, eigenvalue
spectra of the Kronecker correlation matrices, the correlation scenario and
the result record.
"""

#
# Standard libraries
#

import enum
import logging
import math
from dataclasses import dataclass, field, replace

#
# Internal libraries
#

from mimo_outage.errors import (
    ConfigError,
    DimensionMismatch,
    ModelMismatch,
    NegativeProbability,
    NonDistinctSpectrum,
    NonPositiveEigenvalue,
    ScenarioError,
    SpectrumError,
    TraceViolation,
)


log = logging.getLogger(__name__)

# Relative tolerance of the trace normalisation tr(R) = N.
TRACE_RTOL = 1e-9

# Distinct eigenvalues must be at least this far apart, times the length.
GAP_RTOL = 1e-9

# Probabilities below this are flagged; the asymptote is the better tool there.
NUMERICAL_FLOOR = 1e-13


class Model(enum.Enum):
    INDEPENDENT = 'ind'
    SEMI_RX = 'semi-rx'
    SEMI_TX = 'semi-tx'
    FULL = 'full'

    @classmethod
    def parse(cls, text):
        """
        Accepts the CLI spelling of a model (`ind`, `semi`, `semi-rx`, ...).
        """
        if isinstance(text, cls):
            return text
        name = str(text).strip().lower()
        aliases = {
            'independent': cls.INDEPENDENT,
            'semi': cls.SEMI_RX,
            'rx': cls.SEMI_RX,
            'tx': cls.SEMI_TX,
            'fully': cls.FULL,
        }
        if name in aliases:
            return aliases[name]
        try:
            return cls(name)
        except ValueError:
            raise ConfigError('Unknown correlation model: {0}'.format(text))

    @property
    def correlated_sides(self):
        """
        (transmit side correlated, receive side correlated)
        """
        return {
            Model.INDEPENDENT: (False, False),
            Model.SEMI_RX: (False, True),
            Model.SEMI_TX: (True, False),
            Model.FULL: (True, True),
        }[self]

    @classmethod
    def from_sides(cls, tx, rx):
        return {
            (False, False): cls.INDEPENDENT,
            (False, True): cls.SEMI_RX,
            (True, False): cls.SEMI_TX,
            (True, True): cls.FULL,
        }[(bool(tx), bool(rx))]


class Method(enum.Enum):
    EXACT = 'exact'
    ASYMPTOTIC = 'asym'
    MONTE_CARLO = 'mc'

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise ConfigError('Unknown method: {0}'.format(text))


def _positive_int(value, name):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ConfigError('{0} must be a positive integer, got {1!r}'.format(name, value))
    return int(value)


@dataclass(frozen=True)
class SystemConfig:
    """
    Antenna counts, target rate R in bits/s/Hz and the transmit SNR in dB.

    Everything derived (rho, tau, the smaller dimension) is a property so it
    can never go stale.
    """
    n_t: int
    n_r: int
    rate: float
    snr_db: float

    def __post_init__(self):
        object.__setattr__(self, 'n_t', _positive_int(self.n_t, 'n_t'))
        object.__setattr__(self, 'n_r', _positive_int(self.n_r, 'n_r'))
        rate = float(self.rate)
        if not math.isfinite(rate) or rate <= 0:
            raise ConfigError('rate must be a positive real, got {0!r}'.format(self.rate))
        snr_db = float(self.snr_db)
        if not math.isfinite(snr_db):
            raise ConfigError('snr_db must be finite, got {0!r}'.format(self.snr_db))
        object.__setattr__(self, 'rate', rate)
        object.__setattr__(self, 'snr_db', snr_db)

    @classmethod
    def from_rho(cls, n_t, n_r, rate, rho):
        if not rho > 0:
            raise ConfigError('rho must be positive, got {0!r}'.format(rho))
        return cls(n_t, n_r, rate, 10.0 * math.log10(rho))

    @property
    def rho(self):
        return 10.0 ** (self.snr_db / 10.0)

    @property
    def tau(self):
        return abs(self.n_t - self.n_r) - 1

    @property
    def n_min(self):
        return min(self.n_t, self.n_r)

    @property
    def n_max(self):
        return max(self.n_t, self.n_r)

    @property
    def diversity(self):
        return self.n_t * self.n_r

    @property
    def threshold(self):
        """
        Outage threshold x = 2^R on G = det(I + rho H H^H).
        """
        return 2.0 ** self.rate

    def with_snr(self, snr_db):
        return replace(self, snr_db=snr_db)

    def with_rate(self, rate):
        return replace(self, rate=rate)

    def swapped(self):
        return replace(self, n_t=self.n_r, n_r=self.n_t)

    def ordered(self):
        """
        Same link with n_t >= n_r.
        """
        return self if self.n_t >= self.n_r else self.swapped()


@dataclass(frozen=True)
class EigenSpectrum:
    """
    Positive eigenvalues in descending order. `identity` marks the
    uncorrelated case and is the only spectrum allowed to repeat a value
    among correlation spectra.
    """
    values: tuple
    identity: bool = False

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise SpectrumError('Empty eigenvalue spectrum')
        if not all(math.isfinite(v) for v in values):
            raise SpectrumError('Eigenvalues must be finite: {0}'.format(values))
        if any(v <= 0 for v in values):
            raise NonPositiveEigenvalue('Eigenvalues must be positive: {0}'.format(values))
        if any(a < b for a, b in zip(values, values[1:])):
            raise SpectrumError('Eigenvalues must be in descending order: {0}'.format(values))
        if self.identity and any(v != 1.0 for v in values):
            raise SpectrumError('Identity spectrum with non-unit values: {0}'.format(values))
        object.__setattr__(self, 'values', values)

    @classmethod
    def identity_of(cls, n):
        return cls((1.0,) * _positive_int(n, 'spectrum length'), identity=True)

    @classmethod
    def correlation(cls, values, renormalize=False):
        """
        Spectrum of a correlation matrix: trace equal to its size, values
        distinct unless every one of them is exactly 1.
        """
        values = sorted((float(v) for v in values), reverse=True)
        if values and any(v <= 0 for v in values):
            raise NonPositiveEigenvalue('Eigenvalues must be positive: {0}'.format(values))
        n = len(values)
        if renormalize and n:
            scale = n / math.fsum(values)
            values = [v * scale for v in values]
        if n and all(v == 1.0 for v in values):
            return cls.identity_of(n)
        spectrum = cls(tuple(values))
        spectrum.require_trace(n)
        spectrum.require_distinct()
        return spectrum

    @classmethod
    def allocation(cls, values, n=None):
        """
        Eigenvalues of an input covariance: repeats allowed, trace at most n.
        """
        values = sorted((float(v) for v in values), reverse=True)
        n = len(values) if n is None else n
        if values and all(v == 1.0 for v in values):
            return cls.identity_of(len(values))
        spectrum = cls(tuple(values))
        if spectrum.trace > n * (1.0 + TRACE_RTOL):
            raise TraceViolation(
                'Power constraint tr(R_x) <= {0} violated: trace is {1!r}'.format(n, spectrum.trace)
            )
        return spectrum

    @classmethod
    def free(cls, values):
        """
        Effective spectra with no trace constraint.
        """
        values = sorted((float(v) for v in values), reverse=True)
        if values and all(v == 1.0 for v in values):
            return cls.identity_of(len(values))
        return cls(tuple(values))

    @property
    def n(self):
        return len(self.values)

    @property
    def trace(self):
        return math.fsum(self.values)

    @property
    def determinant(self):
        return math.prod(self.values)

    @property
    def reciprocals(self):
        return tuple(1.0 / v for v in self.values)

    @property
    def min_gap(self):
        if self.n < 2:
            return math.inf
        return min(a - b for a, b in zip(self.values, self.values[1:]))

    def require_trace(self, n=None):
        n = self.n if n is None else n
        if abs(self.trace - n) > TRACE_RTOL * n:
            raise TraceViolation(
                'Trace normalisation tr(R) = {0} violated: trace is {1!r}'.format(n, self.trace)
            )

    def require_distinct(self):
        if self.n < 2:
            return
        if self.identity or self.min_gap <= GAP_RTOL * self.n:
            raise NonDistinctSpectrum(
                'Eigenvalues must be distinct: {0}'.format(self.values)
            )

    def __str__(self):
        return ','.join('%.12g' % v for v in self.values)


@dataclass(frozen=True)
class ChannelScenario:
    model: Model
    t_spectrum: EigenSpectrum
    r_spectrum: EigenSpectrum
    x_spectrum: EigenSpectrum = None

    def __post_init__(self):
        object.__setattr__(self, 'model', Model.parse(self.model))
        if self.x_spectrum is None:
            object.__setattr__(self, 'x_spectrum', EigenSpectrum.identity_of(self.t_spectrum.n))

    @classmethod
    def build(cls, model, n_t, n_r, t=None, r=None, x=None, renormalize=False):
        """
        Scenario from plain eigenvalue lists; a missing list is the identity.
        """
        t_spectrum = EigenSpectrum.identity_of(n_t) if t is None else EigenSpectrum.correlation(t, renormalize)
        r_spectrum = EigenSpectrum.identity_of(n_r) if r is None else EigenSpectrum.correlation(r, renormalize)
        x_spectrum = None if x is None else EigenSpectrum.allocation(x, n_t)
        return cls(model, t_spectrum, r_spectrum, x_spectrum)

    @property
    def power_allocated(self):
        return not self.x_spectrum.identity


def validate_scenario(scenario, cfg):
    """
    Checks the scenario against the link dimensions and returns it with a
    model tag consistent with the spectra.

    A declared model may be downgraded (Full with an identity receive side is
    SemiTx), but a spectrum correlated on a side the declared model rules out
    is an error.
    """
    t, r, x = scenario.t_spectrum, scenario.r_spectrum, scenario.x_spectrum
    if t.n != cfg.n_t or r.n != cfg.n_r:
        raise DimensionMismatch(
            'Spectra lengths ({0}, {1}) do not match n_t={2}, n_r={3}'.format(t.n, r.n, cfg.n_t, cfg.n_r)
        )
    if x.n != cfg.n_t:
        raise DimensionMismatch(
            'Input covariance has {0} eigenvalues, expected n_t={1}'.format(x.n, cfg.n_t)
        )
    if x.trace > cfg.n_t * (1.0 + TRACE_RTOL):
        raise TraceViolation('Power constraint tr(R_x) <= {0} violated'.format(cfg.n_t))

    for spectrum in (t, r):
        if not spectrum.identity:
            spectrum.require_trace()
            spectrum.require_distinct()

    allow_tx, allow_rx = scenario.model.correlated_sides
    if not t.identity and not allow_tx:
        raise ModelMismatch(
            'Model {0} forbids transmit correlation, got t={1}'.format(scenario.model.value, t)
        )
    if not r.identity and not allow_rx:
        raise ModelMismatch(
            'Model {0} forbids receive correlation, got r={1}'.format(scenario.model.value, r)
        )

    model = Model.from_sides(not t.identity, not r.identity)
    if model is not scenario.model:
        log.debug('Scenario model %s routed to %s', scenario.model.value, model.value)
        scenario = replace(scenario, model=model)
    return scenario


def interchange_normalize(scenario, cfg):
    """
    Swaps the roles of transmitter and receiver where the evaluators want
    it: SemiTx always becomes SemiRx, Independent and Full end up with
    n_t >= n_r. H H^H and H^H H share their nonzero eigenvalues, so the
    outage probability is unchanged.
    """
    if scenario.power_allocated:
        raise ScenarioError('Absorb the input covariance before interchanging the link ends')

    swap = scenario.model is Model.SEMI_TX or (
        scenario.model in (Model.INDEPENDENT, Model.FULL) and cfg.n_t < cfg.n_r
    )
    if not swap:
        return scenario, cfg

    t, r = scenario.r_spectrum, scenario.t_spectrum
    model = Model.from_sides(not t.identity, not r.identity)
    swapped = ChannelScenario(model, t, r, EigenSpectrum.identity_of(t.n))
    return swapped, cfg.swapped()


@dataclass(frozen=True)
class OutageResult:
    probability: float
    method: Method
    err_estimate: float = 0.0
    raw_value: float = None
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.raw_value is None:
            object.__setattr__(self, 'raw_value', self.probability)
        object.__setattr__(self, 'flags', frozenset(self.flags))

    @classmethod
    def from_raw(cls, raw, method, err=0.0, flags=()):
        """
        Clamps a raw estimate into [0, 1].

        Exact values outside [0, 1] by more than their own error estimate are
        a numerical failure. Asymptotes above 1 (low SNR) are clamped with the
        excess carried as the error estimate.
        """
        raw = float(raw)
        err = float(err)
        flags = set(flags)
        probability = raw
        if raw < 0.0 or raw > 1.0:
            excess = -raw if raw < 0.0 else raw - 1.0
            if method is Method.ASYMPTOTIC and raw > 1.0:
                err = max(err, excess)
            elif excess > err:
                raise NegativeProbability(
                    'Raw {0} value {1!r} outside [0, 1] beyond its error estimate {2!r}'.format(
                        method.value, raw, err)
                )
            probability = min(max(raw, 0.0), 1.0)
            flags.add('clamped')
            log.warning('Clamped %s value %r to %r', method.value, raw, probability)
        if method is Method.EXACT and probability < NUMERICAL_FLOOR:
            flags.add('below-floor')
            log.warning('Exact value %r is below the numerical floor %r', raw, NUMERICAL_FLOOR)
        return cls(probability, method, err, raw, frozenset(flags))
