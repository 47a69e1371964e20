"""
Default Django settings for the diffposet console script.

Projects that install diffposet as an app use their own settings; any ``DIFFPOSET_*`` value from
``diffposet.conf.DEFAULTS`` can be overridden there or here.
"""

from django.core.management.utils import get_random_secret_key

SECRET_KEY = get_random_secret_key()

DEBUG = False

INSTALLED_APPS = [
    'diffposet',
]

DATABASES = {}

USE_TZ = True

# Reports go to stdout, log records to stderr
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'diffposet': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}
