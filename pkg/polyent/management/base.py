import sys
import json

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import PolyentException
from ..linalg import PartitionSpec
from ..measures import PURE_CONCURRENCE, LHS_MODES
from ..policy import NumericPolicy
from ..roof import OptimizerSettings
from ..utils import params_parser, params_section, ReportEncoder
from .. import states


RECIPES_HELP = ('State recipe "family:params" (gsd3, w3, w4_weighted, ghz,'
                ' haar, product; presets gsd3, w4b, w4c, ghz3; rN means'
                ' 1/sqrt(N)) or a state file "file:path.json".')


class PolyentCommand(BaseCommand):
    """
    Shared arguments and error handling: library errors and I/O errors
    become CommandError (non-zero exit with message). Subclasses implement
    run(**options) and may return an exit code.
    """
    requires_system_checks = []
    state_required = True
    default_state = None

    def add_arguments(self, parser):
        parser.add_argument(
            '-s', '--state', dest='state', default=self.default_state,
            required=self.state_required and not self.default_state,
            help=RECIPES_HELP)
        parser.add_argument(
            '--cut', dest='cut', default=None,
            help='Partition like "A|BC", default first subsystem vs all.')
        parser.add_argument(
            '--seed', dest='seed', type=int, default=None,
            help='Seed of haar states and of the roof optimizer.')
        parser.add_argument(
            '--tol', dest='tol', type=float, default=None,
            help='Slack tolerance of inequality verdicts.')
        parser.add_argument(
            '--lhs-mode', dest='lhs_mode', default=PURE_CONCURRENCE,
            choices=LHS_MODES, help='Global-cut tau_a mode.')
        parser.add_argument(
            '-p', '--params', dest='params', default='',
            help='Runtime params, e.g. "optimizer.restarts=32'
                 ' policy.psd=1e-8".')

    def get_params(self, options):
        return params_parser(options.get('params') or '')

    def get_policy(self, options):
        overrides = params_section(self.get_params(options), 'policy')
        if options.get('tol') is not None:
            overrides['slack'] = options['tol']
        return NumericPolicy.default().replace(**overrides)

    def get_settings(self, options):
        overrides = params_section(self.get_params(options), 'optimizer')
        if options.get('seed') is not None:
            overrides.setdefault('seed', options['seed'])
        return OptimizerSettings.default(**overrides)

    def get_state(self, options, policy=None):
        recipe = states.parse_recipe(options['state'], seed=options['seed'])
        return recipe, states.build(recipe, policy)

    def get_part(self, options, psi):
        if options.get('cut'):
            return PartitionSpec.from_cut(options['cut'], psi.nsub)
        return PartitionSpec.default(psi.nsub)

    def emit(self, data):
        self.stdout.write(json.dumps(data, cls=ReportEncoder, sort_keys=True,
                                     indent=2, ensure_ascii=False))

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            code = self.run(**options)
        except (PolyentException, OSError) as e:
            raise CommandError(str(e))
        if code:
            sys.exit(code)
