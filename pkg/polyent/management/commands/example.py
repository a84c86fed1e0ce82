from ..base import PolyentCommand
from ...reproductions import run_all
from ...utils import format_number


class Command(PolyentCommand):
    help = 'Recompute every worked-example number and print a pass/fail table.'
    state_required = False

    def run(self, **options):
        rows = run_all(self.get_settings(options), self.get_policy(options))
        width = max(len(i['claim']) for i in rows)

        self.stdout.write('%s  %14s  %2s  %14s  %8s  %s' % (
            'claim'.ljust(width), 'expected', '', 'computed', 'tol', 'result'))
        for row in rows:
            self.stdout.write('%s  %14s  %2s  %14s  %8s  %s' % (
                row['claim'].ljust(width), format_number(row['expected']),
                row['compare'], format_number(row['computed']),
                '%.0e' % row['tolerance'] if row['tolerance'] else '0',
                'PASS' if row['passed'] else 'FAIL'))

        failed = [i for i in rows if not i['passed']]
        self.stdout.write('\n%s of %s reproduced (%s)' % (
            len(rows) - len(failed), len(rows),
            'FAIL' if failed else 'SUCCESS'))
        return 1 if failed else 0
