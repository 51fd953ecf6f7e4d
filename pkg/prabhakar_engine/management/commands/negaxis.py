"""
Compare the Taylor series with the negative semi-axis expansion
"""
from prabhakar_engine.management.base import EngineCommand
from prabhakar_engine.table_builder import FigureDataBuilder


class Command(EngineCommand):
    help = 'Tabulate E(-t) from the series and from the large-t expansion on a log grid'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_params_arguments(parser)
        parser.add_argument('--t-min', type=float, default=1.0, help='First grid point')
        parser.add_argument('--t-max', type=float, default=100.0, help='Last grid point')
        parser.add_argument('--points', type=int, default=50, help='Number of grid points')
        parser.add_argument('--out', help='Write the CSV to this file instead of stdout')

    def run(self, **options):
        builder = FigureDataBuilder(options['tol'], options['max_terms'])
        table = builder.build_negative_axis_table(
            self.params_from(options), options['t_min'], options['t_max'], options['points']
        )
        self.emit_table(table, options['out'])
