"""
Apply a Prabhakar operator to a sampled test function
"""
from prabhakar_engine.management.base import EngineCommand
from prabhakar_engine.table_builder import OPERATOR_KINDS, TEST_FUNCTIONS, FigureDataBuilder


class Command(EngineCommand):
    help = 'Apply a Prabhakar integral or derivative on a uniform grid and compare with closed forms'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--kind', choices=sorted(OPERATOR_KINDS), required=True, help='Operator')
        parser.add_argument('--alpha', type=float, required=True, help='alpha in (0, 2)')
        parser.add_argument('--gamma', type=float, required=True, help='gamma > 0')
        parser.add_argument('--lambda', dest='lam', type=float, default=0.0, help='Kernel rate lambda')
        parser.add_argument('--h', type=float, default=1e-2, help='Grid step')
        parser.add_argument('--t-max', type=float, default=5.0, help='End of the grid')
        parser.add_argument('--test-fn', choices=TEST_FUNCTIONS, default='one', help='Test function')
        parser.add_argument('--beta-loss', type=float, default=1.0, help='Loss rate of the eigen test function')
        parser.add_argument('--out', help='Write the CSV to this file instead of stdout')

    def run(self, **options):
        builder = FigureDataBuilder(options['tol'], options['max_terms'])
        table = builder.build_operator_table(
            options['kind'], options['alpha'], options['gamma'], options['lam'],
            options['h'], options['t_max'], options['test_fn'], options['beta_loss'],
        )
        self.emit_table(table, options['out'])
