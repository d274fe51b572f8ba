# -*- coding: utf-8 -*-
"""
Settings for the command line tools: built-in defaults, an optional JSON
config file and command-line flags, in increasing precedence.

Config file keys (all optional):

    model        ind | semi-rx | semi-tx | full
    n_t, n_r     antenna counts
    rate         target rate in bits/s/Hz (sweep and gain also take a:b:step)
    snr_db       SNR in dB (sweep takes a:b:step)
    t_eigs       transmit correlation eigenvalues, list or "a,b,c"
    r_eigs       receive correlation eigenvalues
    x_eigs       input covariance eigenvalues
    renormalize  rescale correlation spectra to trace n
    methods      subset of exact, asym, mc
    samples      Monte Carlo sample count
    seed         Monte Carlo seed
    accumulator  neumaier | double-double
    dims         antenna pairs for gain, e.g. "1x1,2x2,3x2"
"""

#
# Standard libraries
#

import json
import logging
import math

#
# Internal libraries
#

from mimo_outage.errors import ConfigError
from mimo_outage.model import ChannelScenario, Method, Model, SystemConfig
from mimo_outage.permutations import ACCUMULATORS


log = logging.getLogger(__name__)

DEFAULTS = {
    'model': 'ind',
    'n_t': 2,
    'n_r': 2,
    'rate': 2.0,
    'snr_db': 10.0,
    't_eigs': None,
    'r_eigs': None,
    'x_eigs': None,
    'renormalize': False,
    'methods': 'exact,asym',
    'samples': 10 ** 6,
    'seed': 7,
    'accumulator': 'neumaier',
    'dims': '1x1,2x2,3x3',
}

KNOWN_KEYS = frozenset(DEFAULTS)


def load_config_file(path):
    try:
        with open(path) as handle:
            document = json.load(handle)
    except (IOError, OSError) as e:
        raise ConfigError('Cannot read config file {0}: {1}'.format(path, e))
    except ValueError as e:
        raise ConfigError('Config file {0} is not valid JSON: {1}'.format(path, e))
    if not isinstance(document, dict):
        raise ConfigError('Config file {0} must hold a JSON object'.format(path))
    unknown = sorted(set(document) - KNOWN_KEYS)
    if unknown:
        raise ConfigError('Unknown keys in config file {0}: {1}'.format(path, ', '.join(unknown)))
    return document


def merge_settings(flags, path=None):
    """
    Defaults, overridden by the config file, overridden by every flag that
    was given (None means not given).
    """
    settings = dict(DEFAULTS)
    if path:
        settings.update(load_config_file(path))
        log.debug('Loaded settings from %s', path)
    settings.update((key, value) for key, value in flags.items() if value is not None and key in KNOWN_KEYS)
    return settings


def _number(text, name):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ConfigError('{0} must be a number, got {1!r}'.format(name, text))
    if not math.isfinite(value):
        raise ConfigError('{0} must be finite, got {1!r}'.format(name, text))
    return value


def _integer(text, name):
    value = _number(text, name)
    if value != int(value):
        raise ConfigError('{0} must be an integer, got {1!r}'.format(name, text))
    return int(value)


def _items(value):
    if isinstance(value, (list, tuple)):
        return list(value)
    return [item for item in str(value).split(',') if item.strip()]


def parse_eigenvalues(value, name='eigenvalues'):
    """
    Comma-separated (or JSON list) descending positive reals; None passes
    through as "identity".
    """
    if value is None:
        return None
    values = [_number(item, name) for item in _items(value)]
    if not values:
        raise ConfigError('{0} list is empty'.format(name))
    if any(a < b for a, b in zip(values, values[1:])):
        raise ConfigError('{0} must be listed in descending order, got {1}'.format(name, values))
    return tuple(values)


def parse_range(value, name='range'):
    """
    `a:b:step` (inclusive of b) or a single value.
    """
    if isinstance(value, (int, float)):
        return [float(value)]
    parts = str(value).split(':')
    if len(parts) == 1:
        return [_number(parts[0], name)]
    if len(parts) != 3:
        raise ConfigError('{0} must look like a:b:step, got {1!r}'.format(name, value))
    start, stop, step = (_number(part, name) for part in parts)
    if step <= 0:
        raise ConfigError('{0} step must be positive, got {1!r}'.format(name, value))
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count < 1:
        raise ConfigError('{0} {1!r} is empty'.format(name, value))
    return [round(start + k * step, 12) for k in range(count)]


def parse_dims(value):
    dims = []
    for item in _items(value):
        parts = str(item).lower().split('x')
        if len(parts) != 2:
            raise ConfigError('Antenna pair must look like 3x2, got {0!r}'.format(item))
        n_t, n_r = (_integer(part, 'antenna count') for part in parts)
        if n_t < 1 or n_r < 1:
            raise ConfigError('Antenna counts must be positive, got {0!r}'.format(item))
        dims.append((n_t, n_r))
    if not dims:
        raise ConfigError('No antenna pairs given')
    return dims


def parse_methods(value):
    methods = [Method.parse(item) for item in _items(value)]
    if not methods:
        raise ConfigError('No evaluation methods given')
    return methods


def parse_accumulator(value):
    if value not in ACCUMULATORS:
        raise ConfigError('Unknown accumulator {0!r}, expected one of {1}'.format(value, ', '.join(ACCUMULATORS)))
    return value


def parse_flag(value):
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ('1', 'true', 'yes', 'on')


def single_point(value, name):
    points = parse_range(value, name)
    if len(points) != 1:
        raise ConfigError('{0} must be a single value here, got {1!r} ({2} points)'.format(name, value, len(points)))
    return points[0]


def build_scenario(settings, rate=None, snr_db=None):
    """
    SystemConfig and ChannelScenario from merged settings. `rate` and
    `snr_db` override ranged settings; without an override the setting
    must name a single point.
    """
    n_t = _integer(settings['n_t'], 'n_t')
    n_r = _integer(settings['n_r'], 'n_r')
    rate = single_point(settings['rate'], 'rate') if rate is None else rate
    snr_db = single_point(settings['snr_db'], 'snr_db') if snr_db is None else snr_db
    cfg = SystemConfig(n_t, n_r, rate, snr_db)
    scenario = ChannelScenario.build(
        Model.parse(settings['model']), n_t, n_r,
        t=parse_eigenvalues(settings['t_eigs'], 't_eigs'),
        r=parse_eigenvalues(settings['r_eigs'], 'r_eigs'),
        x=parse_eigenvalues(settings['x_eigs'], 'x_eigs'),
        renormalize=parse_flag(settings['renormalize']),
    )
    return scenario, cfg
