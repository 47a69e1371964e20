#!/usr/bin/env python
"""Runs the diffposet test project, e.g. ``python tests/manage.py test test_app``"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'test_project.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django, which diffposet needs for its settings and commands. "
            "Install the package with 'pip install -e .[test]' first."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
