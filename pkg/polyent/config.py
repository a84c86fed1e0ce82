from django.apps import AppConfig


class PolyentConfig(AppConfig):
    name = 'polyent'
    verbose_name = 'Polygamy of entanglement'
