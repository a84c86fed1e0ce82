from ..base import PolyentCommand
from ...polygamy import CHECKS, GIVEN, SORTED, resolve, run_check
from ...utils import split_numbers


HELD, CONFIRMED, TENTATIVE, CONDITION_FAILED = 0, 2, 3, 4
EXIT_CODES = {'held': HELD, 'confirmed': CONFIRMED, 'tentative': TENTATIVE,
              'condition-failed': CONDITION_FAILED}


class Command(PolyentCommand):
    help = ('Check one polygamy inequality on a state. Exit code 0 when it'
            ' holds, 2 on a confirmed violation, 3 on a violation resting on'
            ' optimizer lower bounds, 4 when the bound fails together with its'
            ' ordering condition.')

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument(
            '-i', '--inequality', dest='inequality', required=True,
            help='One of %s (aliases eq1, eq2, eq4, eq18).'
                 % ', '.join(sorted(CHECKS)))
        parser.add_argument(
            '--alpha', dest='alpha', type=float, default=None,
            help='Exponent of the tau_a bounds, 0..2.')
        parser.add_argument(
            '--beta', dest='beta', type=float, default=None,
            help='Exponent of the E_a bounds, 0..1.')
        parser.add_argument(
            '--order', dest='order', default=GIVEN, choices=(GIVEN, SORTED),
            help='Partner order of the ordering conditions.')
        parser.add_argument(
            '--terms', dest='terms', default=None,
            help='Comma separated pairwise values replacing computed ones.')
        parser.add_argument(
            '--no-escalate', dest='escalate', action='store_false',
            help='Do not recompute tentative violations.')

    def run(self, **options):
        policy = self.get_policy(options)
        recipe, psi = self.get_state(options, policy)
        name = resolve(options['inequality'])
        kind = CHECKS[name][1]

        report = run_check(
            name, psi, self.get_part(options, psi),
            exponent=options.get(kind) if kind else None,
            lhs_mode=options['lhs_mode'], settings=self.get_settings(options),
            order=options['order'],
            terms=(split_numbers(options['terms']) if options['terms']
                   else None),
            policy=policy, escalate=options['escalate'])

        self.emit(dict(report.to_dict(), state=recipe.text,
                       status=report.status))
        return EXIT_CODES[report.status]
