import csv

from ..base import PolyentCommand
from ...polygamy import sweep_beta
from ...utils import format_number, split_numbers


COLUMNS = ('beta', 'lhs_ea', 'rhs_th3', 'rhs_eq19', 'marginal_th3',
           'marginal_eq19',)


class Command(PolyentCommand):
    help = ('Sweep β over [from, to] and write the weighted and the prior'
            ' E_a bounds with their margins as CSV.')
    default_state = 'w3'

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument(
            '--from', dest='start', type=float, default=0.0)
        parser.add_argument(
            '--to', dest='stop', type=float, default=1.0)
        parser.add_argument(
            '--steps', dest='steps', type=int, default=11)
        parser.add_argument(
            '--terms', dest='terms', default=None,
            help='Comma separated pairwise E_a values replacing the'
                 ' optimizer, e.g. "0.666666666667,0.666666666667".')
        parser.add_argument(
            '-o', '--out', dest='out', default=None,
            help='CSV path, standard output when omitted.')

    def write(self, rows, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([format_number(row[i]) for i in COLUMNS])

    def run(self, **options):
        policy = self.get_policy(options)
        recipe, psi = self.get_state(options, policy)

        rows = sweep_beta(
            psi, self.get_part(options, psi), options['start'],
            options['stop'], options['steps'],
            terms=(split_numbers(options['terms']) if options['terms']
                   else None),
            ea_settings=self.get_settings(options), policy=policy)

        if options['out']:
            with open(options['out'], 'w', encoding='utf-8',
                      newline='') as f:
                self.write(rows, f)
            self.stdout.write('Wrote %s rows to %s' % (len(rows),
                                                      options['out'],))
        else:
            self.stdout.ending = ''
            self.write(rows, self.stdout)
