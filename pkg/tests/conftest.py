"""Configures Django for pytest the same way ``tests/manage.py`` does."""
import os
import sys

import django

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'test_project.settings')
django.setup()
