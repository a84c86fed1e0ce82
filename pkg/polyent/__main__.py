"""
Standalone command line: `python -m polyent <command>` or `polyent <command>`.

Without a Django project (no DJANGO_SETTINGS_MODULE) a minimal settings
object with only this app installed is configured.
"""
import os
import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line


ALIASES = {
    'check': 'check_polygamy',
    'sweep-beta': 'sweep_beta',
}


def configure():
    if not os.environ.get('DJANGO_SETTINGS_MODULE') and not settings.configured:
        settings.configure(INSTALLED_APPS=['polyent'])
    django.setup()


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    configure()

    argv[0] = 'polyent'
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
