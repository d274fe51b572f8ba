# -*- coding: utf-8 -*-
"""
Runs the verification checks and reports PASS/FAIL per record. Exits 1 when
any check fails.
"""

#
# Standard libraries
#

import sys

#
# Third party libraries
#

from colorama import Fore

#
# Internal libraries
#

from mimo_outage.cli.application import Application as BaseApplication
from mimo_outage.config import parse_accumulator
from mimo_outage.errors import ConfigError
from mimo_outage.suite import CHECK_NAMES, VerifyContext, run_checks


NAME = 'mimo-outage-verify'

USAGE = """Verification checks of the outage evaluators.

Usage:
  {name} [options]

Options:
  -h --help                show this help message and exit
  --only=<list>            comma list of checks to run (default: all)
  --samples=<n>            Monte Carlo samples per oracle comparison [default: 200000]
  --seed=<n>               Monte Carlo seed [default: 7]
  --accumulator=<name>     neumaier | double-double [default: neumaier]
  --no-color               plain PASS/FAIL
  --format=<format>        csv | table | json [default: table]
  --output=<path>          write to a file instead of stdout
  --log-level=<level>      debug | info | warning | error | critical [default: warning]

Checks: {checks}
""".format(name=NAME, checks=', '.join(CHECK_NAMES))

VERIFY_COLUMNS = ('check', 'status', 'detail', 'measured', 'tolerance')


class Application(BaseApplication):

    COLUMNS = VERIFY_COLUMNS

    def __init__(self, name=NAME, argv=None):
        super(Application, self).__init__(name, USAGE, argv)
        self.color = not self.args['--no-color']
        self.failed = 0

    def metadata(self):
        return ['{0}: only={1}, samples={2}, seed={3}'.format(
            self.name, self.args['--only'] or 'all', self.args['--samples'], self.args['--seed'])]

    def context(self):
        try:
            samples = int(self.args['--samples'])
            seed = int(self.args['--seed'])
        except ValueError:
            raise ConfigError('--samples and --seed must be integers')
        if samples < 1 or seed < 0:
            raise ConfigError('--samples must be positive and --seed non-negative')
        accumulator = parse_accumulator(self.args['--accumulator'])
        return VerifyContext.from_environment(samples=samples, seed=seed, accumulator=accumulator)

    def status(self, passed):
        text = 'PASS' if passed else 'FAIL'
        if not self.color or self.output_format != 'table':
            return text
        return (Fore.GREEN if passed else Fore.RED) + text + Fore.RESET

    def execute(self):
        only = self.args['--only']
        names = [name.strip() for name in only.split(',') if name.strip()] if only else None
        records = run_checks(names, self.context())
        self.failed = sum(1 for record in records if not record.passed)
        self.logger.info('%d of %d verification records passed', len(records) - self.failed, len(records))
        return [
            {
                'check': record.name,
                'status': self.status(record.passed),
                'detail': record.detail,
                'measured': record.measured,
                'tolerance': record.tolerance,
            }
            for record in records
        ]

    def run(self):
        rows = super(Application, self).run()
        if self.failed:
            sys.stderr.write('{0}: {1} verification record(s) failed\n'.format(self.name, self.failed))
            sys.exit(1)
        return rows


def main(argv=None):
    app = Application(argv=argv)
    app.run()


if __name__ == '__main__':
    main()
