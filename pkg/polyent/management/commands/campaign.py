from django.core.management.base import BaseCommand

from ..base import PolyentCommand
from ...base import CampaignConfig, ConsoleLogger, RandomCampaign
from ...measures import PURE_CONCURRENCE, LHS_MODES
from ...polygamy import ALPHAS, TH1
from ...utils import split_numbers


class Command(PolyentCommand):
    help = ('Check inequalities on Haar random states. Writes summary.json'
            ' and reports.jsonl into --out. Exit code 1 on errors, 2 on'
            ' confirmed violations.')
    state_required = False

    def add_arguments(self, parser):
        # random states only, no --state
        BaseCommand.add_arguments(self, parser)
        parser.add_argument(
            '--dims', dest='dims', default='2,2,2',
            help='Comma separated subsystem dimensions.')
        parser.add_argument(
            '-n', '--count', dest='count', type=int, default=500)
        parser.add_argument(
            '--seed', dest='seed', type=int, default=0,
            help='Master seed, state k is seeded by (seed, k).')
        parser.add_argument(
            '--inequalities', dest='inequalities', default=TH1,
            help='Comma separated inequality ids.')
        parser.add_argument(
            '--exponents', '--alpha', '--beta', dest='exponents',
            default=None,
            help='Comma separated exponents (default %s for tau_a bounds).'
                 % ','.join(map(str, ALPHAS)))
        parser.add_argument(
            '--cut', dest='cut', default=None)
        parser.add_argument(
            '--lhs-mode', dest='lhs_mode', default=PURE_CONCURRENCE,
            choices=LHS_MODES, help='Global-cut tau_a mode.')
        parser.add_argument(
            '--tol', dest='tol', type=float, default=None)
        parser.add_argument(
            '--threads', dest='threads', type=int, default=None)
        parser.add_argument(
            '-o', '--out', dest='out', default=None,
            help='Output directory.')
        parser.add_argument(
            '-p', '--params', dest='params', default='')

    def run(self, **options):
        inequalities = [i.strip() for i in options['inequalities'].split(',')
                        if i.strip()]
        exponents = (split_numbers(options['exponents'])
                     if options['exponents'] else None)

        config = CampaignConfig(
            dims=[int(i) for i in split_numbers(options['dims'])],
            count=options['count'], seed=options['seed'],
            exponents=exponents, inequalities=inequalities,
            lhs_mode=options['lhs_mode'],
            output=options['out'], cut=options['cut'],
            settings=self.get_settings(options),
            policy=self.get_policy(options), threads=options['threads'])

        self.stdout.ending = ''
        campaign = RandomCampaign(config, loggers=[ConsoleLogger(self.stdout)])
        status = campaign.run()

        if campaign.summary:
            self.stdout.write('\n%s\n' % campaign.summary.to_json())
        if status:
            return 1
        if campaign.summary.confirmed_violations:
            return 2
