import contextlib
import io
import json
import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from meyerbhcp.__main__ import EXIT_SUCCESS, EXIT_USAGE, main
from meyerbhcp.cli_io.field_file import read_field, write_field
from meyerbhcp.cli_io.tables import write_key_values, write_plot_data
from meyerbhcp.errors import FieldFileError
from meyerbhcp.grid import RealField, UniformGrid
from meyerbhcp.paths import OutputPaths
from meyerbhcp.version import __version__

from .utils.fields import random_field, sine_grid

SINE_UNIT = 3 / (16 * math.pi)


def temp_dir() -> Path:
    return Path(tempfile.mkdtemp())


def run_main(*argv) -> (int, str):
    stdout = io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, stdout.getvalue()


class FieldFileTest(unittest.TestCase):

    def test_round_trip(self):
        f = random_field(UniformGrid((-1.0, 0.0), (2.0, 0.5), (8, 16)), seed=2)
        path = temp_dir() / 'f.field'
        write_field(f, path)
        back = read_field(path)
        self.assertEqual(back.grid, f.grid)
        np.testing.assert_array_equal(back.values, f.values)

    def write_text(self, text: str) -> Path:
        path = temp_dir() / 'bad.field'
        path.write_text(text)
        return path

    def assertFieldError(self, text: str, line_number: int):
        with self.assertRaises(FieldFileError) as context:
            read_field(self.write_text(text))
        self.assertEqual(context.exception.line_number, line_number)

    def test_bad_magic(self):
        self.assertFieldError('hello 1\n', 1)

    def test_bad_number(self):
        values = '\n'.join(['0.0'] * 3 + ['zero'] + ['0.0'] * 4)
        self.assertFieldError(f'meyerbhcp-field 1\ndim 1\naxis 0 1 8\n{values}\n', 7)

    def test_too_few_values(self):
        self.assertFieldError('meyerbhcp-field 1\ndim 1\naxis 0 1 8\n1.0\n2.0\n', 6)

    def test_too_many_values(self):
        values = '\n'.join(['0.0'] * 9)
        self.assertFieldError(f'meyerbhcp-field 1\ndim 1\naxis 0 1 8\n{values}\n', 12)

    def test_bad_grid(self):
        self.assertFieldError('meyerbhcp-field 1\ndim 1\naxis 0 1 6\n', 3)

    def test_missing_file(self):
        with self.assertRaises(FieldFileError):
            read_field(temp_dir() / 'absent.field')


class TablesTest(unittest.TestCase):

    def test_plot_data_2d(self):
        grid = UniformGrid.cube(0.0, 1.0, 8, dim=2)
        path = temp_dir() / 'plot.csv'
        write_plot_data({'a': RealField.zeros(grid), 'b': RealField.zeros(grid)}, path)
        lines = path.read_text().splitlines()
        self.assertEqual(lines[0], 'x,y,a,b')
        self.assertEqual(len(lines), 1 + 64)
        self.assertEqual(lines[2], '0.0,0.125,0.0,0.0')

    def test_key_values_sorted(self):
        path = temp_dir() / 'kv.csv'
        write_key_values({'relative': 0.1, 'absolute': 0.25, 'J': 3}, path)
        self.assertEqual(path.read_text(), 'key,value\nJ,3\nabsolute,0.25\nrelative,0.1\n')


class CommandLineTest(unittest.TestCase):

    def test_version_shows_release_notes(self):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout), self.assertRaises(SystemExit):
            main(['--version'])
        self.assertIn(f'meyerbhcp {__version__}', stdout.getvalue())
        self.assertIn('solve command', stdout.getvalue())

    def test_unknown_example(self):
        code, _ = run_main('demo', '--example=9', f'--out={temp_dir()}')
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_usage(self):
        code, _ = run_main('frobnicate')
        self.assertEqual(code, EXIT_USAGE)

    def test_empty_frequency_list(self):
        code, _ = run_main('illposed', '--example=1', '--m=', f'--out={temp_dir()}')
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_input(self):
        out = temp_dir()
        code, _ = run_main('solve', str(out / 'absent.field'), '--kappa=affine:2,1', '--J=3', f'--out={out}')
        self.assertEqual(code, EXIT_USAGE)

    def test_solve_without_level(self):
        path = temp_dir() / 'final.field'
        write_field(RealField.from_function(sine_grid(16), np.sin), path)
        code, _ = run_main('solve', str(path), '--kappa=affine:2,1', f'--out={temp_dir()}')
        self.assertEqual(code, EXIT_USAGE)

    def test_noise_free_demo(self):
        out = temp_dir()
        code, stdout = run_main('demo', '--example=1', '--epsilon=0', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        relative = float(stdout.split('relative error ')[1])
        self.assertLessEqual(relative, 1e-8)
        for name in (OutputPaths.exact, OutputPaths.noisy_final, OutputPaths.reconstruction,
                     OutputPaths.pointwise_error, OutputPaths.error_report, OutputPaths.plot_data):
            self.assertTrue((out / name).is_file(), name)
        manifest = json.loads((out / OutputPaths.manifest).read_text())
        self.assertEqual(manifest['problem_id'], 'EX1')
        self.assertEqual(manifest['J'], 3)
        self.assertTrue(manifest['grades']['audits']['__isinstance_Pass__'])

    def test_demo_level_rule_reaches_reference_magnitudes(self):
        out = temp_dir()
        code, stdout = run_main('demo', '--example=1', '--epsilon=1e-4', '--pq=0', '--t=0', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        report = (out / OutputPaths.error_report).read_text()
        # The rule gives J* = 1; the stopband edge of level 3 in this unit is 2^1.
        self.assertIn('J,3\n', report)
        self.assertLessEqual(float(stdout.split('relative error ')[1]), 0.02)
        manifest = json.loads((out / OutputPaths.manifest).read_text())
        self.assertEqual(manifest['reports']['level']['rule_J'], 1)
        self.assertTrue(manifest['grades']['audits']['__isinstance_Pass__'])

    def test_demo_level_below_the_data_fails_its_audits(self):
        out = temp_dir()
        code, _ = run_main('demo', '--example=1', '--epsilon=1e-3', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        self.assertIn('J,2\n', (out / OutputPaths.error_report).read_text())
        manifest = json.loads((out / OutputPaths.manifest).read_text())
        self.assertTrue(manifest['grades']['audits']['__isinstance_Fail__'])
        self.assertEqual(manifest['grades']['audits']['__class__'],
                         'meyerbhcp.grading.solve_audits.FailDueToRemovedMode')

    def test_sweep_table(self):
        out = temp_dir()
        code, _ = run_main('sweep', '--example=1', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        lines = (out / OutputPaths.sweep_table).read_text().splitlines()
        self.assertEqual(lines[0], 'space,epsilon,absolute,relative')
        self.assertEqual(len(lines), 1 + 5 * 4)
        self.assertTrue(lines[1].startswith('V2,0.1,'))

    def test_sweep_is_reproducible(self):
        first, second = temp_dir(), temp_dir()
        run_main('sweep', '--example=1', '--levels=3,4', '--epsilons=0.01,0.001', f'--out={first}')
        run_main('sweep', '--example=1', '--levels=3,4', '--epsilons=0.01,0.001', f'--out={second}')
        self.assertEqual((first / OutputPaths.sweep_table).read_text(),
                         (second / OutputPaths.sweep_table).read_text())

    def test_illposed_table(self):
        out = temp_dir()
        code, _ = run_main('illposed', '--example=1', '--m=16,4,8', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        lines = (out / OutputPaths.illposed_table).read_text().splitlines()
        self.assertEqual(lines[0], 'm,data_error,solution_error,ratio_bound')
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['4', '8', '16'])

    def test_solve(self):
        grid = sine_grid(256)
        path = temp_dir() / 'final.field'
        write_field(RealField.from_function(grid, np.sin), path)
        out = temp_dir()
        code, _ = run_main('solve', str(path), '--kappa=affine:2,1', '--J=3', f'--unit={SINE_UNIT!r}', f'--out={out}')
        self.assertEqual(code, EXIT_SUCCESS)
        reconstruction = read_field(out / OutputPaths.solve_output)
        x, = grid.coordinates()
        np.testing.assert_allclose(reconstruction.values, math.exp(2.0) * np.sin(x), atol=1e-8)
        report = (out / OutputPaths.solve_report).read_text()
        self.assertIn('J_used,3', report)
        self.assertTrue((out / OutputPaths.manifest).is_file())


if __name__ == '__main__':
    unittest.main()
