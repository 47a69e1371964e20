from pathlib import Path

from ...constructions import Family, FamilySpec, family_from_name, parse_factors
from ...exceptions import RunConfigError
from ...runner import Command as Run, RunConfig
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Builds Young, Young-Fibonacci or product posets and writes them as diffposet-hasse v1'
    command = Run.BUILD
    rank_arguments = False

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, help='young, yf or product')
        parser.add_argument('--factors', default='', help="product factors, e.g. 'young,yf' or 'young^2'")
        parser.add_argument('--ranks', type=int, required=True, help='top rank N')
        parser.add_argument('--out', default=None, help='output file (default: standard output)')
        super().add_arguments(parser)

    def get_config(self, options) -> RunConfig:
        family = family_from_name(options['family'])
        factors = parse_factors(options['factors'], options['ranks']) if family == Family.PRODUCT else ()
        if options['factors'] and family != Family.PRODUCT:
            raise RunConfigError('--factors only applies to --family product')
        return RunConfig(
            self.command,
            output_path=Path(options['out']) if options['out'] else None,
            family=FamilySpec(family, options['ranks'], factors),
            structured=options['json'],
        )
