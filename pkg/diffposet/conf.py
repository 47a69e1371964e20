"""diffposet settings

Every value can be overridden in the Django settings module with a ``DIFFPOSET_`` prefix,
e.g. ``DIFFPOSET_SEED = 7``.
"""

from django.conf import settings

DEFAULTS = {
    'SEED': 0,
    'ORACLE_COUNT': 100,
    'ORACLE_SIZE': 5,
    'ORACLE_BOUND': 9,
    'K_VALUES': (1, 2, 3),
    'JOBS': 1,
    'DENSE_LIMIT': 300,
}


class AppSettings:

    def __getattr__(self, name):
        if name not in DEFAULTS:
            raise AttributeError(f"Invalid diffposet setting: '{name}'")
        return getattr(settings, f'DIFFPOSET_{name}', DEFAULTS[name])


app_settings = AppSettings()
