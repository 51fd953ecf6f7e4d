"""
Tabulate the time factor of the heat-equation solutions
"""
from prabhakar_engine.heat import HeatParams
from prabhakar_engine.management.base import EngineCommand
from prabhakar_engine.table_builder import FigureDataBuilder


class Command(EngineCommand):
    help = 'Tabulate f(t), f(t) - phi_0 and the two-term large-t form as CSV'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--alpha', type=float, required=True, help='alpha > 0')
        parser.add_argument('--gamma', type=float, required=True, help='gamma, with alpha*gamma in (0, 1)')
        parser.add_argument('--lambda', dest='lam', type=float, required=True, help='lambda > 0')
        parser.add_argument('--beta-loss', type=float, required=True, help='Loss rate beta >= 0')
        parser.add_argument('--t-max', type=float, default=1e4, help='Last grid point')
        parser.add_argument('--points', type=int, default=101, help='Number of grid points')
        parser.add_argument('--log-tilde', action='store_true', help='Log-spaced grid for slope extraction')
        parser.add_argument('--t-min', type=float, help='First grid point of the log grid (default 1)')
        parser.add_argument('--out', help='Write the CSV to this file instead of stdout')

    def run(self, **options):
        hp = HeatParams(options['alpha'], options['gamma'], options['lam'], options['beta_loss'])
        builder = FigureDataBuilder(options['tol'], options['max_terms'])
        table = builder.build_heat_table(
            hp, options['t_max'], options['points'], log_tilde=options['log_tilde'], t_min=options['t_min']
        )
        self.emit_table(table, options['out'])
