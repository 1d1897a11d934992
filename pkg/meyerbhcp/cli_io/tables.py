"""
CSV emission. Floats are written with repr() so tables are exact and diff-able.
"""

from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Sequence
import csv

import numpy as np

from meyerbhcp.benchmarks.illposed import IllposednessRow
from meyerbhcp.benchmarks.sweep_runner import SweepCell
from meyerbhcp.grid import RealField, check_same_grid

SWEEP_HEADER = ('space', 'epsilon', 'absolute', 'relative')
ILLPOSED_HEADER = ('m', 'data_error', 'solution_error', 'ratio_bound')
AXIS_NAMES = ('x', 'y', 'z')


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def space_name(J: int) -> str:
    return f'V{J}'


def write_sweep_table(cells: Iterable[SweepCell], path: Path):
    write_rows(path, SWEEP_HEADER, (
        (space_name(cell.J), cell.epsilon, cell.errors.absolute, cell.errors.relative) for cell in cells))


def write_illposed_table(rows: Iterable[IllposednessRow], path: Path):
    write_rows(path, ILLPOSED_HEADER, (
        (row.m, row.data_error, row.solution_error, row.ratio_bound) for row in rows))


def write_plot_data(columns: Mapping[str, RealField], path: Path):
    """
    One row per grid point: the coordinates followed by one column per field.
    Used for reconstruction overlays and error surfaces.
    """
    fields = list(columns.values())
    grid = fields[0].grid
    check_same_grid(*(f.grid for f in fields))
    coordinates = [np.broadcast_to(c, grid.shape).ravel() for c in grid.coordinates()]
    values = [f.values.ravel() for f in fields]
    axes = AXIS_NAMES[:grid.dim] if grid.dim <= len(AXIS_NAMES) else tuple(f'x{i}' for i in range(grid.dim))
    header = list(axes) + list(columns.keys())
    write_rows(path, header, zip(*coordinates, *values))


def write_field_csv(f: RealField, path: Path, name: str = 'value'):
    write_plot_data({name: f}, path)


def write_key_values(values: Dict[str, Any], path: Path):
    write_rows(path, ('key', 'value'), sorted(values.items()))
