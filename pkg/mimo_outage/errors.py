# -*- coding: utf-8 -*-
"""
Exceptions raised by mimo_outage.

Everything derives from OutageError so the command line front end can turn
any library failure into a one-line diagnostic and exit status 2.
"""


class OutageError(Exception):
    pass


class ConfigError(OutageError):
    pass


class ScenarioError(OutageError):
    pass


class SpectrumError(ScenarioError):
    pass


class NonDistinctSpectrum(SpectrumError):
    pass


class TraceViolation(SpectrumError):
    pass


class NonPositiveEigenvalue(SpectrumError):
    pass


class DimensionMismatch(ScenarioError):
    pass


class ModelMismatch(ScenarioError):
    pass


class LengthMismatch(OutageError):
    pass


class PoleAtNonpositiveInteger(OutageError):
    pass


class InvalidDegenerateParameters(OutageError):
    pass


class EmptyPoleSet(OutageError):
    pass


class PermutationBudgetExceeded(OutageError):
    pass


class NumericalError(OutageError):
    pass


class MellinSelfTestFailure(NumericalError):
    pass


class NegativeProbability(NumericalError):
    """
    Raw probability outside [0, 1] by more than its own error estimate.
    """
    pass


class DomainError(OutageError):
    pass
