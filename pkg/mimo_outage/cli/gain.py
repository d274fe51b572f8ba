# -*- coding: utf-8 -*-
"""
Coding and modulation gain C(R) against rate for several antenna pairs.
"""

#
# Internal libraries
#

from mimo_outage.asymptotic import coding_gain, diversity_order, g0, snr_for_target_outage
from mimo_outage.cli.application import SHARED_OPTIONS, Application as BaseApplication
from mimo_outage.config import build_scenario, parse_dims, parse_range
from mimo_outage.errors import ConfigError


NAME = 'mimo-outage-gain'

USAGE = """Coding gain C(R) and g_0(2^R) over a rate range.

Usage:
  {name} [options]

Options:
  --dims=<list>            antenna pairs, e.g. 1x1,2x2,3x2
  --target-outage=<p>      also report the asymptotic SNR reaching this outage
{shared}""".format(name=NAME, shared=SHARED_OPTIONS)

GAIN_COLUMNS = ('n_t', 'n_r', 'rate', 'diversity', 'g0', 'coding_gain')


class Application(BaseApplication):

    COLUMNS = GAIN_COLUMNS

    def __init__(self, name=NAME, argv=None):
        super(Application, self).__init__(name, USAGE, argv)
        self.target = None

    def parse_target(self):
        value = self.args.get('--target-outage')
        if value is None:
            return None
        try:
            target = float(value)
        except ValueError:
            raise ConfigError('--target-outage must be a number, got {0!r}'.format(value))
        if not 0.0 < target < 1.0:
            raise ConfigError('--target-outage must lie in (0, 1), got {0!r}'.format(value))
        return target

    def execute(self):
        dims = parse_dims(self.settings['dims'])
        rates = parse_range(self.settings['rate'], 'rate')
        self.target = self.parse_target()
        if self.target is not None:
            self.COLUMNS = GAIN_COLUMNS + ('snr_db_at_target',)

        rows = []
        for n_t, n_r in dims:
            settings = dict(self.settings, n_t=n_t, n_r=n_r)
            for rate in rates:
                scenario, cfg = build_scenario(settings, rate=rate)
                row = {
                    'n_t': n_t,
                    'n_r': n_r,
                    'rate': rate,
                    'diversity': diversity_order(cfg),
                    'g0': g0(cfg),
                    'coding_gain': coding_gain(cfg),
                }
                if self.target is not None:
                    row['snr_db_at_target'] = snr_for_target_outage(scenario, cfg, self.target)
                rows.append(row)
        self.logger.info('Tabulated %d rates for %d antenna pairs', len(rates), len(dims))
        return rows


def main(argv=None):
    app = Application(argv=argv)
    app.run()


if __name__ == '__main__':
    main()
