from ..base import PolyentCommand
from ...measures import MEASURES, measure


class Command(PolyentCommand):
    help = 'Compute one entanglement measure of a state across a cut.'

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument(
            '-m', '--measure', dest='measure', required=True,
            choices=MEASURES, help='Measure id.')

    def run(self, **options):
        policy = self.get_policy(options)
        recipe, psi = self.get_state(options, policy)
        part = self.get_part(options, psi)

        result = measure(psi, options['measure'], part, options['lhs_mode'],
                         self.get_settings(options), policy)
        self.emit(dict(result.to_dict(), state=recipe.text, cut=part.cut,
                       measure=options['measure']))
