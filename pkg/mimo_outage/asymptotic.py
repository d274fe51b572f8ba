# -*- coding: utf-8 -*-
"""
High-SNR outage asymptotes and their decomposition

    p_out ~ P(R_x) * S(R_t, R_r) * (C(R) * rho)^(-n_t n_r)

into diversity order, coding gain C, spatial correlation factor S and power
allocation factor P.
"""

#
# Standard libraries
#

import logging
import math
from collections import namedtuple
from dataclasses import dataclass, field

#
# Internal libraries
#

from mimo_outage.errors import ConfigError
from mimo_outage.exact import outage_exact
from mimo_outage.model import Method, Model, OutageResult, validate_scenario
from mimo_outage.monte_carlo import effective_tx_correlation
from mimo_outage.residue import evaluate, g_n_full, sigma_sum_polynomial


log = logging.getLogger(__name__)

RATE_TOL = 1e-10
MAX_BISECTIONS = 200
MAX_RATE = 64.0

ConsistencyReport = namedtuple('ConsistencyReport', ['snr_db', 'exact', 'asymptotic', 'ratios', 'extrapolated'])


def diversity_order(cfg):
    return cfg.n_t * cfg.n_r


def independent_kernel_value(cfg):
    """
    The normalised signed sum of prod Gamma(tau + i + sigma_i) g_sigma at 2^R.
    """
    ordered = cfg.ordered()
    return evaluate(sigma_sum_polynomial(ordered.n_t, ordered.n_r), cfg.threshold)


def g0(cfg):
    return evaluate(g_n_full((0,) * cfg.n_min, cfg.ordered()), cfg.threshold)


def coding_gain(cfg):
    """
    C(R) = g_0(2^R)^(-1 / (n_t n_r)); infinite at R = 0.
    """
    value = g0(cfg)
    if value <= 0.0:
        return math.inf
    return value ** (-1.0 / diversity_order(cfg))


def spatial_correlation_factor(t_spectrum, r_spectrum, cfg):
    return r_spectrum.determinant ** (-cfg.n_t) * t_spectrum.determinant ** (-cfg.n_r)


def power_allocation_factor(x_spectrum, cfg):
    return x_spectrum.determinant ** (-cfg.n_r)


def power_allocation_bound(x_spectrum, cfg):
    """
    AM-GM lower bound (tr(R_x) / n_t)^(-n_r * n_t) on the power allocation factor.
    """
    return (x_spectrum.trace / cfg.n_t) ** (-cfg.n_r * cfg.n_t)


def _asymptote(value, cfg, factor=1.0):
    raw = math.exp(math.log(value) - diversity_order(cfg) * math.log(cfg.rho)) * factor if value > 0 else 0.0
    return OutageResult.from_raw(raw, Method.ASYMPTOTIC)


def asym_independent(cfg):
    return _asymptote(independent_kernel_value(cfg), cfg)


def asym_semi(cfg, r_spectrum, side='rx'):
    """
    Independent asymptote times det(R)^(-n) where R is the correlated side's
    matrix and n the antenna count of the other side. Identity spectra are
    accepted.
    """
    if side not in ('rx', 'tx'):
        raise ConfigError('Unknown correlated side {0!r}'.format(side))
    other = cfg.n_t if side == 'rx' else cfg.n_r
    return _asymptote(independent_kernel_value(cfg), cfg, r_spectrum.determinant ** (-other))


def asym_full(cfg, t_spectrum, r_spectrum):
    """
    rho^(-n_t n_r) g_0(2^R) / (det(R_r)^n_t det(R_t)^n_r), through the
    fully correlated kernel.
    """
    return _asymptote(g0(cfg), cfg, spatial_correlation_factor(t_spectrum, r_spectrum, cfg))


def asym_for_model(scenario, cfg):
    """
    Routes a validated scenario without input covariance to its asymptote.
    """
    if scenario.model is Model.INDEPENDENT:
        return asym_independent(cfg)
    if scenario.model is Model.SEMI_RX:
        return asym_semi(cfg, scenario.r_spectrum, 'rx')
    if scenario.model is Model.SEMI_TX:
        return asym_semi(cfg, scenario.t_spectrum, 'tx')
    return asym_full(cfg, scenario.t_spectrum, scenario.r_spectrum)


@dataclass(frozen=True)
class AsymptoteDecomposition:
    diversity_order: int
    coding_gain: float
    correlation_factor: float
    power_factor: float
    probability: float
    power_bound: float = 1.0
    flags: frozenset = field(default_factory=frozenset)

    @classmethod
    def assemble(cls, diversity, gain, correlation, power, rho, power_bound=1.0, flags=()):
        probability = power * correlation * (gain * rho) ** (-diversity)
        return cls(diversity, gain, correlation, power, probability, power_bound, frozenset(flags))

    def result(self):
        return OutageResult.from_raw(self.probability, Method.ASYMPTOTIC, flags=self.flags)


def unified_asymptote(scenario, cfg, t_matrix=None, x_matrix=None):
    """
    Decomposition of the asymptote for any scenario.

    With explicit transmit and input covariance matrices (not necessarily
    commuting) the transmit side is replaced by the spectrum of
    R_t^(1/2) R_x R_t^(1/2), and S carries P with the `merged` flag.
    """
    scenario = validate_scenario(scenario, cfg)
    diversity = diversity_order(cfg)
    gain = coding_gain(cfg)
    r = scenario.r_spectrum

    if t_matrix is not None or x_matrix is not None:
        t = scenario.t_spectrum if t_matrix is None else t_matrix
        x = scenario.x_spectrum if x_matrix is None else x_matrix
        effective = effective_tx_correlation(t, x)
        correlation = spatial_correlation_factor(effective, r, cfg)
        return AsymptoteDecomposition.assemble(diversity, gain, correlation, 1.0, cfg.rho, flags=('merged',))

    correlation = spatial_correlation_factor(scenario.t_spectrum, r, cfg)
    power = power_allocation_factor(scenario.x_spectrum, cfg)
    bound = power_allocation_bound(scenario.x_spectrum, cfg)
    decomposition = AsymptoteDecomposition.assemble(diversity, gain, correlation, power, cfg.rho, bound)
    log.debug(
        'Asymptote: d=%d C=%.12g S=%.12g P=%.12g p=%.6g',
        diversity, gain, correlation, power, decomposition.probability,
    )
    return decomposition


def snr_for_target_outage(scenario, cfg, target):
    """
    SNR in dB at which the asymptote reaches `target`:
    rho = (P S / target)^(1/d) / C.
    """
    if not 0.0 < target < 1.0:
        raise ConfigError('Target outage must lie in (0, 1), got {0!r}'.format(target))
    parts = unified_asymptote(scenario, cfg)
    rho = (parts.power_factor * parts.correlation_factor / target) ** (1.0 / parts.diversity_order) / parts.coding_gain
    return 10.0 * math.log10(rho)


def rate_for_target_outage(scenario, cfg, target):
    """
    Largest rate whose asymptotic outage at the configured SNR does not
    exceed `target`, by bisection on the increasing kernel.
    """
    if not 0.0 < target < 1.0:
        raise ConfigError('Target outage must lie in (0, 1), got {0!r}'.format(target))

    def probability(rate):
        return unified_asymptote(scenario, cfg.with_rate(rate)).probability

    low, high = 0.0, 1.0
    while probability(high) <= target:
        low, high = high, 2.0 * high
        if high > MAX_RATE:
            raise ConfigError('No rate reaches outage {0!r} at {1} dB'.format(target, cfg.snr_db))
    for _ in range(MAX_BISECTIONS):
        if high - low <= RATE_TOL * max(1.0, high):
            break
        middle = 0.5 * (low + high)
        if probability(middle) <= target:
            low = middle
        else:
            high = middle
    return low


def log_log_slope(evaluate_at, rho_1, rho_2):
    """
    Finite-difference slope of log p against log rho.
    """
    p_1, p_2 = evaluate_at(rho_1), evaluate_at(rho_2)
    return (math.log(p_2) - math.log(p_1)) / (math.log(rho_2) - math.log(rho_1))


def asymptotic_consistency(scenario, cfg, snr_grid, accumulator='neumaier'):
    """
    Ratio of asymptote to exact outage along an SNR grid, and its
    extrapolation to infinite SNR from the last two points (the leading
    correction is linear in 1/rho).
    """
    snr_grid = [float(v) for v in snr_grid]
    if len(snr_grid) < 2:
        raise ConfigError('Consistency needs at least two SNR points')
    exact, asymptotic, ratios = [], [], []
    for snr_db in snr_grid:
        point = cfg.with_snr(snr_db)
        exact_value = outage_exact(scenario, point, accumulator).probability
        asym_value = unified_asymptote(scenario, point).probability
        exact.append(exact_value)
        asymptotic.append(asym_value)
        ratios.append(asym_value / exact_value if exact_value > 0 else math.inf)

    rho_1 = cfg.with_snr(snr_grid[-2]).rho
    rho_2 = cfg.with_snr(snr_grid[-1]).rho
    extrapolated = (rho_2 * ratios[-1] - rho_1 * ratios[-2]) / (rho_2 - rho_1)
    log.info('Asymptote/exact ratios %s extrapolate to %.6g', ['%.6g' % v for v in ratios], extrapolated)
    return ConsistencyReport(tuple(snr_grid), tuple(exact), tuple(asymptotic), tuple(ratios), extrapolated)
