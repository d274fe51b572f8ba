# -*- coding: utf-8 -*-
"""
Outage probability against SNR for several evaluation methods.
"""

#
# Third party libraries
#

from eventlet import greenpool

#
# Internal libraries
#

from mimo_outage.asymptotic import unified_asymptote
from mimo_outage.cli.application import SHARED_OPTIONS, Application as BaseApplication, result_row
from mimo_outage.config import build_scenario, parse_accumulator, parse_methods, parse_range
from mimo_outage.errors import ConfigError
from mimo_outage.exact import outage_exact
from mimo_outage.model import Method
from mimo_outage.monte_carlo import estimate_outage, worker_count


NAME = 'mimo-outage-sweep'

USAGE = """Outage probability over an SNR range.

Usage:
  {name} [options]

Options:
  --methods=<list>         comma list of exact, asym, mc
  --samples=<n>            Monte Carlo sample count
  --seed=<n>               Monte Carlo seed
{shared}""".format(name=NAME, shared=SHARED_OPTIONS)


class Application(BaseApplication):

    def __init__(self, name=NAME, argv=None):
        super(Application, self).__init__(name, USAGE, argv)

    def _count(self, key):
        try:
            value = int(self.settings[key])
        except (TypeError, ValueError):
            raise ConfigError('{0} must be an integer, got {1!r}'.format(key, self.settings[key]))
        if value < 0 or (key == 'samples' and value < 1):
            raise ConfigError('{0} out of range: {1!r}'.format(key, value))
        return value

    def evaluate_point(self, snr_db):
        """
        Rows for one SNR point, one per method in the requested order.
        """
        scenario, cfg = build_scenario(self.settings, snr_db=snr_db)
        rows = []
        for method in self.methods:
            if method is Method.EXACT:
                result = outage_exact(scenario, cfg, self.accumulator)
            elif method is Method.ASYMPTOTIC:
                result = unified_asymptote(scenario, cfg).result()
            else:
                result = estimate_outage(scenario, cfg, self.samples, self.seed).result()
            rows.append(result_row(cfg, scenario.model, result))
        self.logger.debug('Finished %g dB', snr_db)
        return rows

    def execute(self):
        snr_grid = parse_range(self.settings['snr_db'], 'snr_db')
        self.methods = parse_methods(self.settings['methods'])
        self.accumulator = parse_accumulator(self.settings['accumulator'])
        self.samples = self._count('samples')
        self.seed = self._count('seed')
        # Validate once up front so a bad scenario fails before the pool starts.
        build_scenario(self.settings, snr_db=snr_grid[0])

        pool = greenpool.GreenPool(worker_count())
        rows = []
        for point_rows in pool.imap(self.evaluate_point, snr_grid):
            rows.extend(point_rows)
        self.logger.info('Swept %d SNR points with %s', len(snr_grid), ', '.join(m.value for m in self.methods))
        return rows


def main(argv=None):
    app = Application(argv=argv)
    app.run()


if __name__ == '__main__':
    main()
