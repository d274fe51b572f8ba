# -*- coding: utf-8 -*-
"""
Exact outage probability of one configuration.
"""

#
# Internal libraries
#

from mimo_outage.cli.application import SHARED_OPTIONS, Application as BaseApplication, result_row
from mimo_outage.config import build_scenario, parse_accumulator
from mimo_outage.exact import outage_exact


NAME = 'mimo-outage-exact'

USAGE = """Exact outage probability of a Rayleigh MIMO link.

Usage:
  {name} [options]

Options:
{shared}""".format(name=NAME, shared=SHARED_OPTIONS)


class Application(BaseApplication):

    def __init__(self, name=NAME, argv=None):
        super(Application, self).__init__(name, USAGE, argv)

    def execute(self):
        scenario, cfg = build_scenario(self.settings)
        accumulator = parse_accumulator(self.settings['accumulator'])
        result = outage_exact(scenario, cfg, accumulator)
        if result.flags:
            self.logger.warning('Result flags: %s', ', '.join(sorted(result.flags)))
        self.logger.info('%s %dx%d at %.6g dB: %.12g', scenario.model.value, cfg.n_t, cfg.n_r, cfg.snr_db, result.probability)
        return [result_row(cfg, scenario.model, result)]


def main(argv=None):
    app = Application(argv=argv)
    app.run()


if __name__ == '__main__':
    main()
