"""
Shared plumbing of the engine's management commands
"""
import logging
import sys
from typing import Optional

from django.core.management.base import BaseCommand, CommandError

from prabhakar_engine.conf import engine_setting
from prabhakar_engine.exceptions import ConvergenceError, DomainError
from prabhakar_engine.export_service import CsvTable, ExportService
from prabhakar_engine.params import PrabhakarParams

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
DOMAIN_ERROR = 2
IO_ERROR = 3


class EngineCommand(BaseCommand):
    """
    Base class of the engine commands.

    Subclasses implement run(**options). Library errors become CommandError
    with the exit codes 1 (usage), 2 (domain) and 3 (I/O).
    """

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # parse errors raise CommandError so run_from_argv can choose the exit code
        parser.called_from_command_line = False
        return parser

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except CommandError as exc:
            # only argument parsing errors escape BaseCommand.run_from_argv
            usage = self.create_parser(argv[0], argv[1]).format_usage()
            self.stderr.write(f"{usage}{exc}")
            sys.exit(USAGE_ERROR)

    def add_arguments(self, parser):
        parser.add_argument(
            '--tol', type=float, default=engine_setting('SERIES_TOL'),
            help='Relative stopping tolerance of the series'
        )
        parser.add_argument(
            '--max-terms', type=int, default=engine_setting('SERIES_MAX_TERMS'),
            help='Term cap of the Taylor series'
        )

    @staticmethod
    def add_params_arguments(parser):
        parser.add_argument('--alpha', type=float, required=True, help='alpha > 0')
        parser.add_argument('--beta', type=float, required=True, help='beta')
        parser.add_argument('--gamma', type=float, required=True, help='gamma')

    @staticmethod
    def params_from(options) -> PrabhakarParams:
        return PrabhakarParams(options['alpha'], options['beta'], options['gamma'])

    def handle(self, *args, **options):
        logger.info(f"Running {self.__module__.rsplit('.', 1)[-1]}")
        try:
            return self.run(**options)
        except (DomainError, ConvergenceError) as exc:
            raise CommandError(str(exc), returncode=DOMAIN_ERROR) from exc
        except OSError as exc:
            raise CommandError(f"cannot write output: {exc}", returncode=IO_ERROR) from exc

    def run(self, **options) -> Optional[str]:
        raise NotImplementedError('subclasses of EngineCommand must provide a run() method')

    def emit_table(self, table: CsvTable, out: Optional[str] = None) -> None:
        """Print the table as CSV, or write it to out."""
        service = ExportService()
        if out:
            path = service.write_csv(table, out)
            self.stderr.write(self.style.SUCCESS(f"Wrote {len(table.rows)} rows to {path}"))
        else:
            self.stdout.write(service.export_to_csv(table), ending='')
