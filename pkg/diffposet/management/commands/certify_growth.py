from ...runner import Command as Run, RunConfig
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Certifies p_n > p_{n-1} with a prime r + k'
    command = Run.CERTIFY_GROWTH

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--all', action='store_true', help='certify every rank 2..N-1 (overrides --n)')

    def get_config(self, options) -> RunConfig:
        if options['all']:
            options = dict(options, n=None)
        return super().get_config(options)
