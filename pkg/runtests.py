#!/usr/bin/env python
"""Run the polyent test suite without a Django project."""
import sys

import django
from django.conf import settings
from django.test.utils import get_runner


def main(labels=None):
    if not settings.configured:
        settings.configure(INSTALLED_APPS=['polyent'])
    django.setup()

    runner = get_runner(settings)(verbosity=2)
    failures = runner.run_tests(labels or ['polyent.tests'])
    sys.exit(bool(failures))


if __name__ == '__main__':
    main(sys.argv[1:])
