# -*- coding: utf-8 -*-
"""
Dispatches `mimo-outage <command>` to the per-command applications.
"""

#
# Standard libraries
#

import sys

#
# Third party libraries
#

from docopt import DocoptExit, docopt

#
# Internal libraries
#

from mimo_outage.cli import exact, gain, sweep, verify


NAME = 'mimo-outage'

COMMANDS = {
    'exact': exact,
    'sweep': sweep,
    'gain': gain,
    'verify': verify,
}

USAGE = """Outage probability of Rayleigh MIMO links.

Usage:
  {name} <command> [<args>...]
  {name} -h | --help

Commands:
  exact    exact outage of one configuration
  sweep    outage against SNR for exact, asym and mc
  gain     coding gain C(R) over a rate range
  verify   run the verification checks

See `{name} <command> --help` for the options of each command.
""".format(name=NAME)


class Application(object):

    def __init__(self, name=NAME, argv=None):
        self.name = name
        try:
            self.args = docopt(USAGE, argv=argv, options_first=True)
        except DocoptExit as e:
            sys.stderr.write('{0}\n'.format(e))
            sys.exit(2)

    def run(self):
        command = self.args['<command>']
        if command not in COMMANDS:
            sys.stderr.write('{0}: error: unknown command {1!r}, expected one of {2}\n'.format(
                self.name, command, ', '.join(sorted(COMMANDS))))
            sys.exit(2)
        module = COMMANDS[command]
        app = module.Application(name='{0} {1}'.format(self.name, command), argv=self.args['<args>'])
        return app.run()


def main(argv=None):
    app = Application(argv=argv)
    app.run()


if __name__ == '__main__':
    main()
