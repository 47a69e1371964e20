from django.apps import AppConfig


class DiffposetConfig(AppConfig):
    name = 'diffposet'
    verbose_name = 'Differential posets'
