"""diffposet console script

``diffposet <command> [options]`` runs the management command of the same name with the default
settings module ``diffposet.settings``. Hyphenated names map onto the command modules.
"""

import os
import sys

COMMAND_ALIASES = {
    'check': 'check_axioms',
    'certify-growth': 'certify_growth',
    'verify-all': 'verify_all',
}


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1:
        argv[1] = COMMAND_ALIASES.get(argv[1], argv[1])
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'diffposet.settings')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
