"""
Evaluate one Prabhakar function value
"""
from prabhakar_engine.management.base import EngineCommand
from prabhakar_engine.prabhakar import eval_asymptotic, eval_auto, eval_series


class Command(EngineCommand):
    help = 'Evaluate E^gamma_{alpha,beta}(z) and print the value with its truncation diagnostics'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_params_arguments(parser)
        parser.add_argument('--z-re', type=float, required=True, help='Real part of z')
        parser.add_argument('--z-im', type=float, default=0.0, help='Imaginary part of z')
        parser.add_argument(
            '--method', choices=['auto', 'series', 'asymptotic'], default='auto',
            help='Evaluation route'
        )

    def run(self, **options):
        params = self.params_from(options)
        z = complex(options['z_re'], options['z_im'])
        method = options['method']

        if method == 'series':
            result = eval_series(params, z, options['tol'], options['max_terms'])
        elif method == 'asymptotic':
            result = eval_asymptotic(params, z)
        else:
            result = eval_auto(params, z, options['tol'], options['max_terms'])

        lines = [
            f"re: {result.value.real!r}",
            f"im: {result.value.imag!r}",
            f"method: {result.method.value}",
            f"terms_used: {result.terms_used}",
            f"last_term_magnitude: {result.last_term_magnitude!r}",
        ]
        if not result.converged:
            lines.append("converged: false")
        if result.below_threshold:
            lines.append("below_threshold: true")
        if result.discarded_imag:
            lines.append(f"discarded_imag: {result.discarded_imag!r}")
        self.stdout.write('\n'.join(lines))
