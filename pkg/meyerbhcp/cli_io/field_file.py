"""
Plain-text field files:

    meyerbhcp-field 1
    dim <n>
    axis <a> <b> <N>        (one line per axis)
    <value>                 (prod(N) lines, row-major)

Values are written with repr(), so reading a written file gives back the same floats.
"""

from pathlib import Path
from typing import Iterator, List, Tuple

import numpy as np

from meyerbhcp.errors import BhcpError, FieldFileError
from meyerbhcp.grid import RealField, UniformGrid

MAGIC = 'meyerbhcp-field'
FORMAT_VERSION = 1


def write_field(f: RealField, path: Path):
    grid = f.grid
    with open(path, 'w') as out:
        out.write(f'{MAGIC} {FORMAT_VERSION}\n')
        out.write(f'dim {grid.dim}\n')
        for a, b, n in zip(grid.lower, grid.upper, grid.counts):
            out.write(f'axis {a!r} {b!r} {n}\n')
        for value in f.values.ravel(order='C'):
            out.write(f'{float(value)!r}\n')


def _numbered_lines(path: Path) -> Iterator[Tuple[int, str]]:
    try:
        with open(path) as f:
            for line_number, line in enumerate(f, start=1):
                yield line_number, line.strip()
    except OSError as e:
        raise FieldFileError(f'cannot read {path}: {e}')


def _expect(lines: Iterator[Tuple[int, str]], keyword: str, arity: int, previous_line: int) -> Tuple[int, List[str]]:
    try:
        line_number, line = next(lines)
    except StopIteration:
        raise FieldFileError(f'unexpected end of file, expected "{keyword}"', previous_line + 1)
    words = line.split()
    if len(words) != arity + 1 or words[0] != keyword:
        raise FieldFileError(f'expected "{keyword}" with {arity} value(s), got {line!r}', line_number)
    return line_number, words[1:]


def read_field(path: Path) -> RealField:
    lines = _numbered_lines(path)
    line_number, (version,) = _expect(lines, MAGIC, 1, 0)
    if version != str(FORMAT_VERSION):
        raise FieldFileError(f'unsupported format version {version}', line_number)

    line_number, (dim_text,) = _expect(lines, 'dim', 1, line_number)
    try:
        dim = int(dim_text)
    except ValueError:
        raise FieldFileError(f'dimension must be an integer, got {dim_text!r}', line_number)
    if dim < 1:
        raise FieldFileError(f'dimension must be positive, got {dim}', line_number)

    lower, upper, counts = [], [], []
    for _ in range(dim):
        line_number, (a, b, n) = _expect(lines, 'axis', 3, line_number)
        try:
            lower.append(float(a))
            upper.append(float(b))
            counts.append(int(n))
        except ValueError:
            raise FieldFileError(f'malformed axis line: {a} {b} {n}', line_number)
    try:
        grid = UniformGrid(tuple(lower), tuple(upper), tuple(counts))
    except BhcpError as e:
        raise FieldFileError(str(e), line_number)

    expected = int(np.prod(grid.shape))
    values = []
    for line_number, line in lines:
        if not line:
            continue
        if len(values) == expected:
            raise FieldFileError(f'more than the {expected} values declared by the header', line_number)
        try:
            value = float(line)
        except ValueError:
            raise FieldFileError(f'not a number: {line!r}', line_number)
        if not np.isfinite(value):
            raise FieldFileError(f'non-finite value {line!r}', line_number)
        values.append(value)
    if len(values) != expected:
        raise FieldFileError(f'header declares {expected} values, found {len(values)}', line_number + 1)
    return RealField(grid, np.array(values).reshape(grid.shape, order='C'))
