"""Configure Django for pytest the same way runtests.py does."""
import django
from django.conf import settings


def pytest_configure(config):
    if not settings.configured:
        settings.configure(INSTALLED_APPS=['polyent'])
    django.setup()
