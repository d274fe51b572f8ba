# -*- coding: utf-8 -*-

#
# Standard libraries
#

import os
import unittest
from io import StringIO

#
# Third party libraries
#

from colorama import Fore
from mock import MagicMock, patch

#
# Internal libraries
#

from mimo_outage.analysis import CheckRecord
from mimo_outage.cli.verify import Application, main
from mimo_outage.suite import FAULT_ENV


class VerifyTest(unittest.TestCase):

    @patch.dict(os.environ, {FAULT_ENV: ''})
    @patch('sys.stdout', new_callable=StringIO)
    @patch('sys.argv', ['mimo-outage-verify', '--only', 'kernel-identity,majorization'])
    def test_pass(self, mock_stdout):
        """
        Passing checks print a coloured PASS and exit normally
        """
        rows = Application().run()

        self.assertEqual(['kernel-identity'] * 4 + ['majorization'] * 4, [row['check'] for row in rows])
        self.assertTrue(all(row['status'] == Fore.GREEN + 'PASS' + Fore.RESET for row in rows))
        self.assertIn('kernel-identity', mock_stdout.getvalue())

    @patch.dict(os.environ, {FAULT_ENV: 'majorization'})
    @patch('sys.stderr', new_callable=StringIO)
    @patch('sys.stdout', new_callable=StringIO)
    def test_injected_fault(self, mock_stdout, mock_stderr):
        """
        An injected fault fails the run with status 1
        """
        app = Application(argv=['--only', 'majorization', '--no-color', '--format', 'csv'])

        with self.assertRaises(SystemExit) as context:
            app.run()

        self.assertEqual(1, context.exception.code)
        self.assertIn('FAIL', mock_stdout.getvalue())
        self.assertIn('verification record(s) failed', mock_stderr.getvalue())

    @patch('mimo_outage.cli.verify.run_checks')
    def test_context(self, mock_run):
        """
        Samples, seed and accumulator reach the verification context
        """
        mock_run.return_value = [CheckRecord('oracle', True, 'ok', 0.0, 1.0)]
        app = Application(argv=['--samples', '500', '--seed', '3', '--accumulator', 'double-double',
                                '--format', 'json', '--output', os.devnull])

        rows = app.run()

        names, ctx = mock_run.call_args[0]
        self.assertIsNone(names)
        self.assertEqual((500, 3, 'double-double'), (ctx.samples, ctx.seed, ctx.accumulator))
        self.assertEqual('PASS', rows[0]['status'])

    @patch('sys.stderr', new_callable=StringIO)
    def test_bad_arguments(self, mock_stderr):
        """
        Unknown checks and bad sample counts exit with status 2
        """
        for argv in (['--only', 'everything'], ['--samples', 'many'], ['--samples', '0']):
            app = Application(argv=argv)
            with self.assertRaises(SystemExit) as context:
                app.run()
            self.assertEqual(2, context.exception.code)

    def test_main(self):
        """
        Application is instantiated and run() is called in main()
        """
        app = MagicMock()
        app_class = MagicMock(return_value=app)

        with patch('mimo_outage.cli.verify.Application', app_class):
            main()

        app_class.assert_called_once_with(argv=None)
        self.assertTrue(app.run.called)
