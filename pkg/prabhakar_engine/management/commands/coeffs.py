"""
Print the coefficient table of the large-argument expansion
"""
from prabhakar_engine.conf import engine_setting
from prabhakar_engine.management.base import EngineCommand
from prabhakar_engine.table_builder import FigureDataBuilder


class Command(EngineCommand):
    help = 'Print k, c_k, R_k, Upsilon_k as CSV'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_params_arguments(parser)
        parser.add_argument(
            '--n', type=int, default=engine_setting('ASYMPTOTIC_ORDER'),
            help='Largest coefficient index'
        )
        parser.add_argument('--out', help='Write the CSV to this file instead of stdout')

    def run(self, **options):
        builder = FigureDataBuilder(options['tol'], options['max_terms'])
        table = builder.build_coefficient_table(self.params_from(options), options['n'])
        self.emit_table(table, options['out'])
