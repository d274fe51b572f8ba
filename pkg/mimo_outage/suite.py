# -*- coding: utf-8 -*-
"""
Named verification checks run by `mimo-outage verify`.

Each check takes a VerifyContext and returns a list of CheckRecord. Setting
MIMO_OUTAGE_VERIFY_FAULT to a comma list of check names (or `all`) perturbs
the values those checks compare, so the failure path can be exercised.
"""

#
# Standard libraries
#

import logging
import math
import os
from dataclasses import dataclass, field

#
# Third party libraries
#

import numpy as np

#
# Internal libraries
#

from mimo_outage.analysis import (
    CheckRecord,
    convexity_scan,
    sum_reduction_check,
    majorization_chain,
    special_case_embedding_check,
)
from mimo_outage.asymptotic import (
    asym_full,
    asym_independent,
    asymptotic_consistency,
    diversity_order,
    g0,
    log_log_slope,
    power_allocation_factor,
    spatial_correlation_factor,
)
from mimo_outage.errors import ConfigError
from mimo_outage.exact import outage_exact, phi_full, phi_independent, phi_semi
from mimo_outage.mellin import choose_contour, inverse_mellin_cdf
from mimo_outage.model import ChannelScenario, EigenSpectrum, Model, SystemConfig
from mimo_outage.monte_carlo import estimate_outage
from mimo_outage.residue import evaluate, g0_via_permutation_identity, g_n_full, g_sigma


log = logging.getLogger(__name__)

FAULT_ENV = 'MIMO_OUTAGE_VERIFY_FAULT'
FAULT_SCALE = 0.1

IDENTITY_RTOL = 1e-10
CONTOUR_RTOL = 1e-8
CLOSED_FORM_ATOL = 1e-8
INTERCHANGE_RTOL = 1e-9
DIVERSITY_ATOL = 1e-6
CONSISTENCY_RTOL = 0.05
MC_SIGMAS = 3.0

# Eigenvalue vectors of the correlation and power allocation comparisons.
CORRELATION_R = (2.7, 0.2, 0.1)
CORRELATION_CHAIN_T = ((1.0, 1.0, 1.0), (2.3, 0.5, 0.2), (2.7, 0.2, 0.1))
ALLOCATION_T = (1.3, 1.0, 0.7)
ALLOCATION_R = (1.5, 1.0, 0.5)
ALLOCATION_CHAIN_X = ((1.0, 1.0, 1.0), (2.6, 0.2, 0.2), (2.9, 0.07, 0.03))


@dataclass
class VerifyContext:
    samples: int = 200000
    seed: int = 7
    accumulator: str = 'neumaier'
    faults: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_environment(cls, **kwargs):
        value = os.environ.get(FAULT_ENV, '')
        faults = frozenset(item.strip() for item in value.split(',') if item.strip())
        if faults:
            log.warning('Injecting verification faults into: %s', ', '.join(sorted(faults)))
        return cls(faults=faults, **kwargs)

    def faulty(self, name):
        return name in self.faults or 'all' in self.faults

    def perturb(self, name, value):
        if not self.faulty(name):
            return value
        return value * (1.0 + FAULT_SCALE) + FAULT_SCALE


def _relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def check_kernel_identity(ctx):
    """
    The permutation-sum route and the fully correlated kernel agree on g_0.
    """
    records = []
    for n_t, n_r in ((1, 1), (2, 2), (3, 2), (3, 3)):
        worst = 0.0
        for rate in (0.5, 1.0, 2.0, 4.0):
            cfg = SystemConfig(n_t, n_r, rate, 0.0)
            kernel = evaluate(g_n_full((0,) * n_r, cfg), cfg.threshold)
            identity = ctx.perturb('kernel-identity', g0_via_permutation_identity(cfg))
            worst = max(worst, _relative(kernel, identity))
        records.append(CheckRecord(
            'kernel-identity', worst <= IDENTITY_RTOL,
            '{0}x{1}: worst relative gap {2:.3g}'.format(n_t, n_r, worst), worst, IDENTITY_RTOL,
        ))
    return records


def check_sum_reduction(ctx):
    records = [sum_reduction_check(n, trials=100, seed=n) for n in range(1, 5)]
    if ctx.faulty('sum-reduction'):
        records = [CheckRecord(r.name, False, r.detail + ' (fault injected)', r.measured, r.tolerance) for r in records]
    return records


def check_mellin_unity(ctx):
    """
    phi(1) = 1 for each model.
    """
    r3 = EigenSpectrum.correlation(CORRELATION_R)
    t3 = EigenSpectrum.correlation(CORRELATION_CHAIN_T[1])
    cases = [
        ('ind 3x2', lambda w: phi_independent(w, SystemConfig(3, 2, 2.0, 10.0), ctx.accumulator)),
        ('semi 3x3', lambda w: phi_semi(w, SystemConfig(3, 3, 2.0, 10.0), r3, ctx.accumulator)),
        ('semi 2x3', lambda w: phi_semi(w, SystemConfig(2, 3, 2.0, 10.0), r3, ctx.accumulator)),
        ('full 3x3', lambda w: phi_full(w, SystemConfig(3, 3, 2.0, 15.0), t3, r3, ctx.accumulator)),
    ]
    records = []
    for label, phi_at in cases:
        value = ctx.perturb('mellin-unity', complex(np.asarray(phi_at(np.array([1.0 + 0j])))[0]))
        gap = abs(value - 1.0)
        records.append(CheckRecord('mellin-unity', gap <= 1e-8, '{0}: |phi(1) - 1| = {1:.3g}'.format(label, gap), gap, 1e-8))
    return records


def check_convexity(ctx):
    grid = np.arange(0.25, 6.0 + 1e-9, 0.25)
    sign = -1.0 if ctx.faulty('convexity') else 1.0
    records = []
    for n_t, n_r in ((1, 1), (2, 2), (3, 2), (3, 3)):

        def kernel(rate, n_t=n_t, n_r=n_r):
            return sign * g0(SystemConfig(n_t, n_r, rate, 0.0))

        record = convexity_scan(kernel, grid)
        records.append(CheckRecord(
            'convexity', record.passed, '{0}x{1}: {2}'.format(n_t, n_r, record.detail),
            record.measured, record.tolerance,
        ))
    control = convexity_scan(math.log1p, grid)
    records.append(CheckRecord(
        'convexity', not control.passed, 'concave control rejected: {0}'.format(not control.passed),
    ))
    return records


def check_majorization(ctx):
    """
    Majorization chains of the transmit correlation and power allocation
    vectors, with the matching orderings of S and P.
    """
    t_chain = [list(v) for v in CORRELATION_CHAIN_T]
    x_chain = [list(v) for v in ALLOCATION_CHAIN_X]
    if ctx.faulty('majorization'):
        t_chain[0][0] += FAULT_SCALE
        x_chain[0][0] += FAULT_SCALE

    cfg = SystemConfig(3, 3, 2.0, 15.0)
    r = EigenSpectrum.correlation(CORRELATION_R)
    factors = [spatial_correlation_factor(EigenSpectrum.correlation(t), r, cfg) for t in CORRELATION_CHAIN_T]
    powers = [power_allocation_factor(EigenSpectrum.allocation(x), cfg) for x in ALLOCATION_CHAIN_X]
    s_ordered = all(a < b for a, b in zip(factors, factors[1:]))
    p_ordered = all(a < b for a, b in zip(powers, powers[1:])) and powers[0] == 1.0
    return [
        CheckRecord('majorization', majorization_chain(t_chain), 'transmit correlation chain t1 < t2 < t3'),
        CheckRecord('majorization', majorization_chain(x_chain), 'power allocation chain x1 < x2 < x3'),
        CheckRecord('majorization', s_ordered, 'S ordering {0}'.format(', '.join('%.6g' % f for f in factors))),
        CheckRecord('majorization', p_ordered, 'P ordering {0}'.format(', '.join('%.6g' % p for p in powers))),
    ]


def check_embedding(ctx):
    records = []
    for n_t, n_r in ((1, 1), (2, 2), (3, 2)):
        record = special_case_embedding_check(SystemConfig(n_t, n_r, 2.0, 20.0))
        measured = ctx.perturb('embedding', record.measured)
        records.append(CheckRecord('embedding', measured <= record.tolerance, record.detail, measured, record.tolerance))
    return records


def check_residue_contour(ctx):
    """
    Residue polynomials against numerical quadrature of their contour
    integrals.
    """
    kernels = [
        ('g_sigma 1x1', g_sigma((1,), -1, 1)),
        ('g_sigma 2x1', g_sigma((1,), 0, 1)),
        ('g_sigma 2x2 (2,1)', g_sigma((2, 1), -1, 2)),
        ('g_0 2x2', g_n_full((0, 0), SystemConfig(2, 2, 1.0, 0.0))),
    ]
    records = []
    for label, kernel in kernels:
        worst = 0.0
        for x in (1.5, 2.0, 8.0):
            contour = choose_contour(Model.INDEPENDENT, SystemConfig(1, 1, math.log2(x), 0.0), 'exact')
            contour = contour.shifted(-kernel.max_pole - 0.5)
            numeric = inverse_mellin_cdf(kernel.phi_at, x, contour).value
            worst = max(worst, _relative(ctx.perturb('residue-contour', evaluate(kernel, x)), numeric))
        records.append(CheckRecord(
            'residue-contour', worst <= CONTOUR_RTOL, '{0}: worst relative gap {1:.3g}'.format(label, worst),
            worst, CONTOUR_RTOL,
        ))
    return records


def check_closed_form(ctx):
    """
    SISO and 2x1 exact outage against their elementary closed forms.
    """
    worst = 0.0
    for snr_db in (-5.0, 10.0, 30.0):
        for rate in (0.5, 2.0):
            for n_t, reference in ((1, lambda y: -math.expm1(-y)), (2, lambda y: 1.0 - math.exp(-y) * (1.0 + y))):
                cfg = SystemConfig(n_t, 1, rate, snr_db)
                exact = outage_exact(ChannelScenario.build(Model.INDEPENDENT, n_t, 1), cfg, ctx.accumulator)
                expected = reference((cfg.threshold - 1.0) / cfg.rho)
                worst = max(worst, abs(ctx.perturb('closed-form', exact.probability) - expected))
    return [CheckRecord(
        'closed-form', worst <= CLOSED_FORM_ATOL, 'worst absolute gap {0:.3g}'.format(worst), worst, CLOSED_FORM_ATOL,
    )]


INTERCHANGE_CASES = (
    ('ind', ChannelScenario.build(Model.INDEPENDENT, 3, 2), SystemConfig(3, 2, 2.0, 10.0),
     ChannelScenario.build(Model.INDEPENDENT, 2, 3), SystemConfig(2, 3, 2.0, 10.0)),
    ('semi', ChannelScenario.build(Model.SEMI_RX, 2, 3, r=ALLOCATION_R), SystemConfig(2, 3, 1.0, 0.0),
     ChannelScenario.build(Model.SEMI_TX, 3, 2, t=ALLOCATION_R), SystemConfig(3, 2, 1.0, 0.0)),
)


def check_interchange(ctx):
    """
    Exact outage of a link against its interchanged twin, and against
    Monte Carlo drawn on the twin.
    """
    records = []
    for label, scenario, cfg, twin, twin_cfg in INTERCHANGE_CASES:
        dims = '{0}x{1}'.format(cfg.n_t, cfg.n_r)
        twin_dims = '{0}x{1}'.format(twin_cfg.n_t, twin_cfg.n_r)
        first = outage_exact(scenario, cfg, ctx.accumulator)
        second = outage_exact(twin, twin_cfg, ctx.accumulator)
        gap = _relative(ctx.perturb('interchange', first.probability), second.probability)
        records.append(CheckRecord(
            'interchange', gap <= INTERCHANGE_RTOL,
            '{0} {1} vs {2}: relative gap {3:.3g}'.format(label, dims, twin_dims, gap), gap, INTERCHANGE_RTOL,
        ))
        estimate = estimate_outage(twin, twin_cfg, ctx.samples, ctx.seed)
        band = MC_SIGMAS * estimate.std_err + first.err_estimate
        distance = abs(ctx.perturb('interchange', first.probability) - estimate.p_hat)
        records.append(CheckRecord(
            'interchange', distance <= band,
            '{0} exact {1} vs Monte Carlo {2}: {3:.6g} vs {4:.6g}'.format(
                label, dims, twin_dims, first.probability, estimate.p_hat),
            distance, band,
        ))
    return records


def check_diversity(ctx):
    records = []
    cases = [
        ('ind 3x2', SystemConfig(3, 2, 2.0, 0.0), asym_independent),
        ('full 3x3', SystemConfig(3, 3, 2.0, 0.0), lambda cfg: asym_full(
            cfg, EigenSpectrum.correlation(CORRELATION_CHAIN_T[1]), EigenSpectrum.correlation(CORRELATION_R))),
    ]
    for label, cfg, asymptote in cases:

        def evaluate_at(rho, cfg=cfg, asymptote=asymptote):
            return asymptote(SystemConfig.from_rho(cfg.n_t, cfg.n_r, cfg.rate, rho)).raw_value

        slope = ctx.perturb('diversity', log_log_slope(evaluate_at, 1e6, 1e8))
        gap = abs(slope + diversity_order(cfg))
        records.append(CheckRecord(
            'diversity', gap <= DIVERSITY_ATOL, '{0}: slope {1:.9g}'.format(label, slope), gap, DIVERSITY_ATOL,
        ))
    return records


def check_consistency(ctx):
    """
    Asymptote over exact outage, extrapolated to infinite SNR from two
    high-SNR points.
    """
    cases = [
        ('ind 2x2', ChannelScenario.build(Model.INDEPENDENT, 2, 2), SystemConfig(2, 2, 2.0, 0.0)),
        ('semi 2x2', ChannelScenario.build(Model.SEMI_RX, 2, 2, r=(1.5, 0.5)), SystemConfig(2, 2, 2.0, 0.0)),
        ('full 2x2', ChannelScenario.build(Model.FULL, 2, 2, t=(1.2, 0.8), r=(1.5, 0.5)), SystemConfig(2, 2, 2.0, 0.0)),
    ]
    records = []
    for label, scenario, cfg in cases:
        report = asymptotic_consistency(scenario, cfg, (25.0, 30.0), ctx.accumulator)
        gap = abs(ctx.perturb('consistency', report.extrapolated) - 1.0)
        records.append(CheckRecord(
            'consistency', gap <= CONSISTENCY_RTOL,
            '{0}: ratios {1}, extrapolated {2:.6g}'.format(label, ', '.join('%.4g' % v for v in report.ratios), report.extrapolated),
            gap, CONSISTENCY_RTOL,
        ))
    return records


def check_oracle(ctx):
    """
    Exact outage inside the Monte Carlo confidence band.
    """
    cases = [
        ('ind 3x2', ChannelScenario.build(Model.INDEPENDENT, 3, 2), SystemConfig(3, 2, 2.0, 5.0)),
        ('semi 3x3', ChannelScenario.build(Model.SEMI_RX, 3, 3, r=CORRELATION_R), SystemConfig(3, 3, 2.0, 10.0)),
        ('full 3x3', ChannelScenario.build(Model.FULL, 3, 3, t=CORRELATION_CHAIN_T[1], r=CORRELATION_R), SystemConfig(3, 3, 2.0, 5.0)),
        ('power 3x3', ChannelScenario.build(Model.FULL, 3, 3, t=ALLOCATION_T, r=ALLOCATION_R, x=ALLOCATION_CHAIN_X[1]), SystemConfig(3, 3, 3.0, 10.0)),
        ('repeated power 3x3', ChannelScenario.build(Model.INDEPENDENT, 3, 3, x=ALLOCATION_CHAIN_X[1]), SystemConfig(3, 3, 3.0, 10.0)),
    ]
    records = []
    for label, scenario, cfg in cases:
        exact = outage_exact(scenario, cfg, ctx.accumulator)
        estimate = estimate_outage(scenario, cfg, ctx.samples, ctx.seed)
        band = MC_SIGMAS * estimate.std_err + exact.err_estimate
        distance = abs(ctx.perturb('oracle', exact.probability) - estimate.p_hat)
        records.append(CheckRecord(
            'oracle', distance <= band,
            '{0}: exact {1:.6g}, Monte Carlo {2:.6g} +- {3:.2g}'.format(label, exact.probability, estimate.p_hat, estimate.std_err),
            distance, band,
        ))
    return records


CHECKS = {
    'kernel-identity': check_kernel_identity,
    'sum-reduction': check_sum_reduction,
    'mellin-unity': check_mellin_unity,
    'convexity': check_convexity,
    'majorization': check_majorization,
    'embedding': check_embedding,
    'residue-contour': check_residue_contour,
    'closed-form': check_closed_form,
    'interchange': check_interchange,
    'diversity': check_diversity,
    'consistency': check_consistency,
    'oracle': check_oracle,
}

CHECK_NAMES = tuple(CHECKS)


def run_checks(names=None, ctx=None):
    """
    Runs the named checks (all by default) in registry order.
    """
    ctx = VerifyContext.from_environment() if ctx is None else ctx
    names = CHECK_NAMES if not names else tuple(names)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ConfigError('Unknown checks: {0}; known checks are {1}'.format(', '.join(unknown), ', '.join(CHECK_NAMES)))
    records = []
    for name in CHECK_NAMES:
        if name in names:
            log.info('Running check %s', name)
            records.extend(CHECKS[name](ctx))
    return records
