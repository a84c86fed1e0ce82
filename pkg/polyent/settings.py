import os

from django.conf import settings


def setting(name, default):
    # library use works without a configured django project
    return getattr(settings, name, default) if settings.configured else default


TOLERANCES = setting('POLYENT_TOLERANCES', {})
OPTIMIZER = setting('POLYENT_OPTIMIZER', {})
THREADS = int(os.environ.get('POLYENT_THREADS') or
              setting('POLYENT_THREADS', 1))
DATA_DIR = setting('POLYENT_DATA_DIR', os.getcwd())
