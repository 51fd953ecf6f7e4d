"""
Tests for the management commands
"""
import csv
import io
import math

import pytest
from django.core.management import call_command, load_command_class
from django.core.management.base import CommandError

from prabhakar_engine.export_service import CsvTable, ExportService
from prabhakar_engine.heat import HeatParams, f_asymptotic
from prabhakar_engine.management.base import DOMAIN_ERROR, IO_ERROR, USAGE_ERROR
from prabhakar_engine.prabhakar import rgamma


def run(name, *args):
    out = io.StringIO()
    call_command(name, *args, stdout=out, stderr=io.StringIO())
    return out.getvalue()


def parse_csv(text):
    comments = {}
    lines = []
    for line in text.splitlines():
        if line.startswith('# '):
            key, value = line[2:].split(': ', 1)
            comments[key] = value
        else:
            lines.append(line)
    rows = list(csv.reader(lines))
    return comments, rows[0], rows[1:]


def as_float(cell):
    return None if cell == '' else float(cell)


class TestExportService:
    def test_format_number(self):
        assert ExportService.format_number(None) == ''
        assert ExportService.format_number(True) == '1'
        assert ExportService.format_number(3) == '3'
        assert ExportService.format_number(0.1) == '0.1'
        assert ExportService.format_number(float('-inf')) == '-inf'
        assert ExportService.format_number(float('nan')) == 'nan'

    def test_export_layout(self):
        table = CsvTable(header=['t', 'f'], comments={'alpha': '0.5'})
        table.add_row([0.0, 1.0])
        table.add_row([1.5, None])
        assert ExportService().export_to_csv(table) == "# alpha: 0.5\nt,f\n0.0,1.0\n1.5,\n"

    def test_row_length_checked(self):
        table = CsvTable(header=['t', 'f'])
        with pytest.raises(ValueError):
            table.add_row([1.0])

    def test_column(self):
        table = CsvTable(header=['t', 'f'], rows=[[0.0, 1.0], [1.0, 2.0]])
        assert table.column('f') == [1.0, 2.0]


class TestEvalCommand:
    def test_exponential(self):
        output = run('eval', '--alpha', '1', '--beta', '1', '--gamma', '1', '--z-re', '1')
        lines = dict(line.split(': ', 1) for line in output.splitlines())
        assert float(lines['re']) == pytest.approx(math.e, rel=1e-15)
        assert float(lines['im']) == 0.0
        assert lines['method'] == 'series'
        assert int(lines['terms_used']) > 10
        assert 'converged' not in lines

    def test_asymptotic_below_threshold(self):
        output = run('eval', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--z-re', '2', '--method', 'asymptotic')
        assert 'below_threshold: true' in output

    def test_term_cap(self):
        output = run('eval', '--alpha', '0.5', '--beta', '1', '--gamma', '1', '--z-re', '-4',
                     '--method', 'series', '--max-terms', '5')
        assert 'converged: false' in output

    def test_domain_error(self):
        with pytest.raises(CommandError, match="alpha must be positive") as excinfo:
            run('eval', '--alpha', '0', '--beta', '1', '--gamma', '1', '--z-re', '1')
        assert excinfo.value.returncode == DOMAIN_ERROR

    def test_usage_error(self):
        with pytest.raises(CommandError) as excinfo:
            run('eval', '--alpha', '1', '--bogus')
        assert excinfo.value.returncode == USAGE_ERROR

    def test_gamma_is_required(self):
        with pytest.raises(CommandError) as excinfo:
            run('eval', '--alpha', '1', '--beta', '1', '--z-re', '1')
        assert excinfo.value.returncode == USAGE_ERROR

    def test_exit_codes_from_argv(self, capsys):
        command = load_command_class('prabhakar_engine', 'eval')
        with pytest.raises(SystemExit) as excinfo:
            command.run_from_argv(['manage.py', 'eval', '--bogus'])
        assert excinfo.value.code == USAGE_ERROR
        assert 'usage:' in capsys.readouterr().err

        command = load_command_class('prabhakar_engine', 'eval')
        with pytest.raises(SystemExit) as excinfo:
            command.run_from_argv(['manage.py', 'eval', '--alpha', '0', '--beta', '1', '--gamma', '1', '--z-re', '1'])
        assert excinfo.value.code == DOMAIN_ERROR


class TestCoeffsCommand:
    def test_header_and_comments(self):
        comments, header, rows = parse_csv(run('coeffs', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--n', '6'))
        assert header == ['k', 'c_k', 'R_k', 'Upsilon_k']
        assert [int(row[0]) for row in rows] == list(range(7))
        assert comments['alpha'] == '0.7'
        assert comments['K'] == '6'
        assert float(comments['psi']) == pytest.approx(1.1)

    def test_gamma_one_collapses(self):
        _, _, rows = parse_csv(run('coeffs', '--alpha', '1.3', '--beta', '0.6', '--gamma', '1'))
        c = [float(row[1]) for row in rows]
        assert c[0] == 1.0
        assert max(abs(v) for v in c[1:]) <= 1e-12

    def test_output_file(self, tmp_path):
        path = tmp_path / 'coeffs.csv'
        stderr = io.StringIO()
        call_command('coeffs', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--out', str(path),
                     stdout=io.StringIO(), stderr=stderr)
        assert path.read_text(encoding='utf-8').startswith('# alpha: 0.7\n')
        assert 'Wrote 13 rows' in stderr.getvalue()

    def test_unwritable_output(self, tmp_path):
        path = tmp_path / 'missing' / 'coeffs.csv'
        with pytest.raises(CommandError, match="cannot write output") as excinfo:
            run('coeffs', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--out', str(path))
        assert excinfo.value.returncode == IO_ERROR


class TestNegaxisCommand:
    def test_point_count(self):
        _, header, rows = parse_csv(run('negaxis', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--points', '2'))
        assert header == ['t', 'E_series', 'E_asymptotic', 'rel_gap', 'C_terms']
        assert len(rows) == 2
        assert float(rows[0][0]) == 1.0
        assert float(rows[-1][0]) == pytest.approx(100.0)

    def test_dominant_term_count(self):
        comments, _, rows = parse_csv(run('negaxis', '--alpha', '6', '--beta', '1', '--gamma', '1', '--points', '2'))
        assert all(row[4] == '2' for row in rows)
        assert comments['recessive_terms'] == 'true'

    def test_series_column_left_empty_far_out(self):
        _, _, rows = parse_csv(run('negaxis', '--alpha', '0.5', '--beta', '1', '--gamma', '0.8',
                                   '--t-min', '10', '--t-max', '100', '--points', '3'))
        assert rows[-1][1] == ''
        assert rows[-1][3] == ''
        assert float(rows[-1][2]) > 0

    def test_gap_shrinks(self):
        _, _, rows = parse_csv(run('negaxis', '--alpha', '0.9', '--beta', '1', '--gamma', '0.8',
                                   '--t-min', '2', '--t-max', '12', '--points', '6'))
        gaps = [float(row[3]) for row in rows]
        assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))

    def test_bad_grid(self):
        with pytest.raises(CommandError) as excinfo:
            run('negaxis', '--alpha', '0.7', '--beta', '1', '--gamma', '0.9', '--t-min', '5', '--t-max', '1')
        assert excinfo.value.returncode == DOMAIN_ERROR


class TestHeatCommand:
    def test_linear_grid(self):
        comments, header, rows = parse_csv(run('heat', '--alpha', '0.7', '--gamma', '0.9', '--lambda', '1.5',
                                               '--beta-loss', '1', '--t-max', '5', '--points', '6'))
        assert header == ['t', 'f', 'f_tilde', 'f_asym2']
        assert rows[0][:2] == ['0.0', '1.0']
        assert rows[0][3] == ''
        phi0 = float(comments['phi_0'])
        assert float(rows[-1][2]) == pytest.approx(float(rows[-1][1]) - phi0)
        assert comments['grid'] == 'linear'

    def test_large_loss_fills_asymptotic_column(self):
        # beta_loss / lambda^gamma = 2: phi_j come from the generating function
        comments, _, rows = parse_csv(run('heat', '--alpha', '0.7', '--gamma', '0.9', '--lambda', '1',
                                          '--beta-loss', '2', '--t-max', '2', '--points', '3'))
        assert rows[0][3] == ''
        hp = HeatParams(0.7, 0.9, 1.0, 2.0)
        for row in rows[1:]:
            assert float(row[3]) == pytest.approx(f_asymptotic(hp, float(row[0]), J=2), rel=1e-15)
        assert float(comments['phi_0']) == pytest.approx(1 / 3, rel=1e-15)
        assert 'generating function' in comments['f_asym2']

    def test_rejects_bad_parameters(self):
        with pytest.raises(CommandError) as excinfo:
            run('heat', '--alpha', '0.7', '--gamma', '2', '--lambda', '1.5', '--beta-loss', '1')
        assert excinfo.value.returncode == DOMAIN_ERROR


class TestOperatorCommand:
    def test_caputo_of_constant(self):
        comments, _, rows = parse_csv(run('operator', '--kind', 'caputo', '--alpha', '0.6', '--gamma', '0.8',
                                          '--lambda', '1.5', '--t-max', '1'))
        assert max(abs(float(row[1])) for row in rows) <= 1e-12
        assert comments['low_accuracy_nodes'] == '1'

    def test_riemann_liouville_integral(self):
        alpha = 0.6
        _, _, rows = parse_csv(run('operator', '--kind', 'integral', '--alpha', str(alpha), '--gamma', '1',
                                   '--test-fn', 't', '--t-max', '1'))
        for row in rows:
            t, numeric, reference = float(row[0]), float(row[1]), float(row[2])
            assert reference == pytest.approx(t ** (1 + alpha) * rgamma(2 + alpha), abs=1e-14)
            assert numeric == pytest.approx(reference, abs=1e-12)

    def test_eigen_reference(self):
        comments, _, rows = parse_csv(run('operator', '--kind', 'caputo', '--alpha', '0.7', '--gamma', '0.9',
                                   '--lambda', '1.5', '--test-fn', 'eigen', '--h', '1e-3', '--t-max', '2'))
        errors = [float(row[3]) for row in rows]
        assert max(errors) <= 1e-3
        assert comments['low_accuracy_nodes'] == '0'

    def test_unsupported_order(self):
        with pytest.raises(CommandError) as excinfo:
            run('operator', '--kind', 'rl', '--alpha', '0.9', '--gamma', '1.5')
        assert excinfo.value.returncode == DOMAIN_ERROR

    def test_deterministic_output(self):
        args = ('operator', '--kind', 'integral', '--alpha', '0.7', '--gamma', '0.8', '--lambda', '1', '--test-fn', 'sin')
        assert run(*args) == run(*args)
