# -*- coding: utf-8 -*-
"""
Shared plumbing of the mimo-outage commands: docopt parsing, logging setup,
settings precedence, error reporting and output rendering.
"""

#
# Standard libraries
#

import csv
import io
import json
import logging
import sys

#
# Third party libraries
#

from docopt import DocoptExit, docopt
from texttable import Texttable

#
# Internal libraries
#

from mimo_outage.config import merge_settings
from mimo_outage.errors import OutageError


# Options every command accepts. Settings options carry no docopt default so
# that an absent flag falls through to the config file.
SHARED_OPTIONS = """\
  -h --help                show this help message and exit
  --config=<path>          JSON settings file (flags take precedence)
  --model=<model>          ind | semi-rx | semi-tx | full
  --nt=<n>                 number of transmit antennas
  --nr=<n>                 number of receive antennas
  --rate=<bits>            target rate in bits/s/Hz
  --snr-db=<db>            transmit SNR in dB
  --t-eigs=<list>          transmit correlation eigenvalues, descending
  --r-eigs=<list>          receive correlation eigenvalues, descending
  --x-eigs=<list>          input covariance eigenvalues, descending
  --renormalize            rescale correlation spectra to trace n
  --accumulator=<name>     neumaier | double-double
  --format=<format>        csv | table | json [default: csv]
  --output=<path>          write to a file instead of stdout
  --log-level=<level>      debug | info | warning | error | critical [default: warning]
"""

LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'
LOG_LEVELS = ('debug', 'info', 'warning', 'error', 'critical')
OUTPUT_FORMATS = ('csv', 'table', 'json')

RESULT_COLUMNS = ('model', 'n_t', 'n_r', 'rate', 'snr_db', 'probability', 'err_estimate', 'method')

# docopt option -> settings key
FLAG_KEYS = {
    '--model': 'model',
    '--nt': 'n_t',
    '--nr': 'n_r',
    '--rate': 'rate',
    '--snr-db': 'snr_db',
    '--t-eigs': 't_eigs',
    '--r-eigs': 'r_eigs',
    '--x-eigs': 'x_eigs',
    '--accumulator': 'accumulator',
    '--methods': 'methods',
    '--samples': 'samples',
    '--seed': 'seed',
    '--dims': 'dims',
}


def format_value(value, missing=''):
    if value is None:
        return missing
    if isinstance(value, float):
        return '%.12g' % value
    return value


def result_row(cfg, model, result):
    return {
        'model': model.value,
        'n_t': cfg.n_t,
        'n_r': cfg.n_r,
        'rate': cfg.rate,
        'snr_db': cfg.snr_db,
        'probability': result.probability,
        'err_estimate': result.err_estimate,
        'method': result.method.value,
    }


class Application(object):
    """
    Base class of the command line tools. Subclasses pass their docopt
    usage text and implement execute(), which returns the rows to render.
    """

    COLUMNS = RESULT_COLUMNS

    def __init__(self, name, usage, argv=None):
        self.name = name
        try:
            self.args = docopt(usage, argv=argv)
        except DocoptExit as e:
            sys.stderr.write('{0}\n'.format(e))
            sys.exit(2)

        self.logger = logging.getLogger(name)
        self.setup_logging(self.args.get('--log-level') or 'warning')

        self.output_format = self.args.get('--format') or 'csv'
        if self.output_format not in OUTPUT_FORMATS:
            self.raise_critical_error('Unknown output format {0!r}, expected one of {1}'.format(
                self.output_format, ', '.join(OUTPUT_FORMATS)))

        try:
            self.settings = merge_settings(self.flags(), self.args.get('--config'))
        except OutageError as e:
            self.raise_critical_error(e)

    def setup_logging(self, level):
        if level not in LOG_LEVELS:
            self.raise_critical_error('Unknown log level {0!r}, expected one of {1}'.format(level, ', '.join(LOG_LEVELS)))
        logging.basicConfig(stream=sys.stderr, level=getattr(logging, level.upper()), format=LOG_FORMAT)

    def flags(self):
        """
        Settings given on the command line; absent flags map to None.
        """
        flags = dict((key, self.args.get(option)) for option, key in FLAG_KEYS.items())
        flags['renormalize'] = True if self.args.get('--renormalize') else None
        return flags

    def raise_critical_error(self, message):
        """
        One-line diagnostic on stderr and exit status 2.
        """
        sys.stderr.write('{0}: error: {1}\n'.format(self.name, message))
        sys.exit(2)

    def execute(self):
        raise NotImplementedError

    def metadata(self):
        """
        Lines of the `#` header in CSV output.
        """
        keys = sorted(key for key, value in self.settings.items() if value is not None)
        return ['{0}: {1}'.format(self.name, ', '.join('{0}={1}'.format(k, self.settings[k]) for k in keys))]

    def render(self, rows):
        renderer = getattr(self, 'render_{0}'.format(self.output_format))
        return renderer(rows)

    def render_csv(self, rows):
        buffer = io.StringIO()
        for line in self.metadata():
            buffer.write('# {0}\n'.format(line))
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.COLUMNS)
        for row in rows:
            writer.writerow([format_value(row.get(column)) for column in self.COLUMNS])
        return buffer.getvalue().rstrip('\n')

    def render_table(self, rows):
        table = Texttable(max_width=0)
        table.set_deco(Texttable.HEADER)
        table.set_cols_dtype(['t'] * len(self.COLUMNS))
        table.header(list(self.COLUMNS))
        for row in rows:
            table.add_row([format_value(row.get(column), '-') for column in self.COLUMNS])
        return table.draw()

    def render_json(self, rows):
        return json.dumps([dict((column, row.get(column)) for column in self.COLUMNS) for row in rows], indent=2)

    def emit(self, text):
        path = self.args.get('--output')
        if not path:
            print(text)
            return
        try:
            with open(path, 'w') as handle:
                handle.write(text + '\n')
        except (IOError, OSError) as e:
            self.raise_critical_error('Cannot write {0}: {1}'.format(path, e))
        self.logger.info('Wrote %s', path)

    def run(self):
        self.logger.debug('Parsed arguments: %s', self.args)
        try:
            rows = self.execute()
        except OutageError as e:
            self.raise_critical_error(e)
        self.emit(self.render(rows))
        return rows
