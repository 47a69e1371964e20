"""diffposet management command base"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import DiffPosetError
from ..runner import Command, RunConfig, run
from ..utils import parse_int_range


class DiffposetCommand(BaseCommand):
    """Shared options and error handling; subclasses set ``command`` and may add options"""
    command: Command = None
    requires_system_checks = []
    # optional flags shared by the commands that read a poset
    rank_arguments = True

    def add_arguments(self, parser):
        if self.command != Command.BUILD:
            parser.add_argument('--in', dest='input', required=True, help='diffposet-hasse v1 input file')
            parser.add_argument('--r', type=int, default=None, help='differential parameter (default: number of atoms)')
        if self.rank_arguments:
            parser.add_argument('--n', default=None, help="rank, range 'a..b' or list 'a,b' (default: all valid ranks)")
            parser.add_argument('--k', default=None, help="positive shift, range or list (default: DIFFPOSET_K_VALUES)")
        parser.add_argument('--json', action='store_true', help='write line-delimited JSON records')
        parser.add_argument('--jobs', type=int, default=None, help='worker processes for independent (n, k) jobs')
        parser.add_argument('--seed', type=int, default=None, help='seed for random matrix checks')

    def get_config(self, options) -> RunConfig:
        return RunConfig(
            self.command,
            input_path=Path(options['input']) if options.get('input') else None,
            n_values=parse_int_range(options['n'], 0) if options.get('n') is not None else None,
            k_values=parse_int_range(options['k'], 1) if options.get('k') is not None else None,
            r=options.get('r'),
            structured=options['json'],
            jobs=options['jobs'],
            seed=options['seed'],
        )

    def handle(self, *args, **options):
        if options['verbosity'] >= 2:
            logging.getLogger('diffposet').setLevel(logging.DEBUG)
        try:
            config = self.get_config(options)
            result = run(config)
        except (DiffPosetError, OSError) as exc:
            raise CommandError(str(exc), returncode=2) from exc
        if result.output is not None:
            # the poset itself is the output
            self.stdout.write(result.output, ending='')
        else:
            for block in result.render(config.structured):
                self.stdout.write(block)
        if not result.passed:
            failed = sum(1 for report in result.reports if not report.passed)
            raise CommandError(f'{failed} of {len(result.reports)} checks failed', returncode=1)
