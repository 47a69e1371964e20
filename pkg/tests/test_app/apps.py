from django.apps import AppConfig


class TestAppConfig(AppConfig):
    """Hosts the diffposet test suite and its diffposet-hasse fixtures"""
    name = 'test_app'
    verbose_name = 'diffposet tests'
