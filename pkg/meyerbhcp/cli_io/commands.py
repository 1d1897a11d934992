from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence

from meyerbhcp.benchmarks.illposed import illposedness_table
from meyerbhcp.benchmarks.metrics import measured_delta
from meyerbhcp.benchmarks.noise import NoiseSpec, add_noise
from meyerbhcp.benchmarks.problems import BenchmarkProblem, final_data, grid_to_json, make_problem
from meyerbhcp.benchmarks.sweep_runner import cells_by_level, make_default_audit, run_benchmark, run_sweep
from meyerbhcp.cli_io.field_file import read_field, write_field
from meyerbhcp.cli_io.tables import (
    space_name, write_field_csv, write_illposed_table, write_key_values, write_plot_data, write_sweep_table)
from meyerbhcp.diffusivity import mu, profile_from_spec
from meyerbhcp.errors import DomainError
from meyerbhcp.grid import UniformGrid
from meyerbhcp.history.run_manifest import ReproductionInfo, RunManifest, log_result, store_manifest
from meyerbhcp.logging_utils import get_logger
from meyerbhcp.paths import OutputPaths
from meyerbhcp.regularizer import RegularizationConfig, regularized_solve, select_level

LOGGER_ID = 'meyerbhcp.cli'

DEFAULT_DELTA = 1e-3


@dataclass
class RunOptions:
    """Flags shared by the commands. None means "use the problem's default"."""
    example: Optional[int] = None
    epsilon: float = 1e-3
    seed: int = 4
    p_minus_q: float = 0.0
    big_m: float = 1.0
    J: Optional[int] = None
    delta: Optional[float] = None
    t: Optional[float] = None
    kappa: Optional[str] = None
    T: Optional[float] = None
    grid: Optional[List[int]] = None
    box: Optional[List[float]] = None
    frequency_unit: Optional[float] = None
    out: Path = Path('out')
    argv: List[str] = field(default_factory=list)


def build_problem(opts: RunOptions) -> BenchmarkProblem:
    """The benchmark of --example with --grid, --box, --kappa, --T and --unit applied."""
    if opts.example is None:
        raise DomainError('--example is required')
    b = make_problem(opts.example)
    overrides = {}
    if opts.grid is not None or opts.box is not None:
        overrides['grid'] = _grid_from_flags(b.grid, opts.grid, opts.box)
    if opts.kappa is not None or opts.T is not None:
        horizon = b.horizon if opts.T is None else opts.T
        overrides['profile'] = profile_from_spec(opts.kappa or b.profile.spec(), horizon)
    if opts.frequency_unit is not None:
        overrides['frequency_unit'] = opts.frequency_unit
    return replace(b, **overrides) if overrides else b


def _grid_from_flags(default: UniformGrid, counts: Optional[Sequence[int]], box: Optional[Sequence[float]]) -> UniformGrid:
    dim = default.dim
    if counts is None:
        counts = default.counts
    elif len(counts) == 1:
        counts = tuple(counts) * dim
    if box is None:
        lower, upper = default.lower, default.upper
    elif len(box) == 2:
        lower, upper = (box[0],) * dim, (box[1],) * dim
    else:
        lower, upper = tuple(box[0::2]), tuple(box[1::2])
    if len(counts) != dim or len(lower) != dim:
        raise DomainError(f'--grid and --box must describe {dim} axes')
    return UniformGrid(tuple(lower), tuple(upper), tuple(counts))


def _manifest(command: str, opts: RunOptions, b: BenchmarkProblem = None, **fields) -> RunManifest:
    problem_fields = {}
    if b is not None:
        problem_fields = dict(
            problem_id=b.problem_id.name,
            grid=grid_to_json(b.grid),
            kappa=b.profile.spec(),
            T=b.horizon,
            frequency_unit=b.frequency_unit,
        )
    problem_fields.update(fields)
    return RunManifest(
        reproduction_info=ReproductionInfo(command=command, argv=list(opts.argv), seed=opts.seed),
        p_minus_q=opts.p_minus_q,
        big_m=opts.big_m,
        **problem_fields,
    )


def cmd_demo(opts: RunOptions) -> int:
    """
    Solves one benchmark from noisy final data and writes the fields, the
    pointwise error, the error report and plot data.
    The level is --J if given, otherwise the level rule applied to the
    measured noise level (or --delta) and moved into the problem's frequency
    unit. The audits fail when that level removes the data's dominant mode.
    """
    log = get_logger(LOGGER_ID)
    b = build_problem(opts)
    t = b.default_t if opts.t is None else opts.t
    noise = NoiseSpec(opts.epsilon, opts.seed)
    clean = final_data(b)
    delta = opts.delta if opts.delta is not None else measured_delta(add_noise(clean, noise), clean)

    J = opts.J
    if J is None and delta == 0.0:
        J = b.default_level
        log.warning(f'noise-free data: the level rule is undefined, using level {J}')
    cfg = RegularizationConfig(
        delta=delta if delta > 0 else DEFAULT_DELTA, p_minus_q=opts.p_minus_q, big_m=opts.big_m,
        manual_J=J, frequency_unit=b.frequency_unit)
    selection = select_level(cfg, mu(b.profile, 0.0).value)
    rule = '' if selection.rule_J is None else f' (level rule gave {selection.rule_J})'
    log.info(f'{b.problem_id.name}: delta={delta:.4g}, level J={selection.J}{rule}'
             + (' (clamped)' if selection.clamped else ''))

    run = run_benchmark(b, noise, cfg, t, audit=make_default_audit(check_dominant_mode=True))
    out = opts.out
    out.mkdir(parents=True, exist_ok=True)
    write_field_csv(run.exact, out / OutputPaths.exact, 'exact')
    write_field_csv(run.noisy_final, out / OutputPaths.noisy_final, 'noisy_final')
    write_field_csv(run.reconstruction, out / OutputPaths.reconstruction, 'reconstruction')
    pointwise_error = run.reconstruction - run.exact
    write_field_csv(pointwise_error, out / OutputPaths.pointwise_error, 'error')
    write_plot_data({
        'exact': run.exact,
        'noisy_final': run.noisy_final,
        'reconstruction': run.reconstruction,
        'error': pointwise_error,
    }, out / OutputPaths.plot_data)
    write_key_values({
        'absolute': run.errors.absolute,
        'relative': run.errors.relative,
        'delta': run.delta,
        'J': selection.J,
    }, out / OutputPaths.error_report)

    log_result(f'{b.problem_id.name} audits', run.grade, log)
    log.info(f'absolute error {run.errors.absolute:.3e}, relative error {run.errors.relative:.3e}')
    print(f'relative error {run.errors.relative!r}')
    store_manifest(_manifest(
        'demo', opts, b, epsilon=opts.epsilon, J=selection.J, t=t,
        reports={'run': run, 'level': selection, 'config': cfg},
        grades={'audits': run.grade}), out)
    return 0


def cmd_sweep(opts: RunOptions, epsilons: Sequence[float], levels: Sequence[int]) -> int:
    """Errors for every (level, epsilon) pair, one table row each."""
    log = get_logger(LOGGER_ID)
    b = build_problem(opts)
    t = b.default_t if opts.t is None else opts.t
    cells = run_sweep(b, epsilons, levels, t, opts.seed)
    out = opts.out
    out.mkdir(parents=True, exist_ok=True)
    write_sweep_table(cells, out / OutputPaths.sweep_table)
    for row in cells_by_level(cells):
        log.info(f'{space_name(row[0].J)}: ' + '  '.join(
            f'{cell.errors.absolute:.2e} & {cell.errors.relative:.4f}' for cell in row))
    for cell in cells:
        log_result(f'{space_name(cell.J)} epsilon={cell.epsilon:g}', cell.grade, log)
    store_manifest(_manifest(
        'sweep', opts, b, t=t,
        reports={'epsilons': list(epsilons), 'levels': list(levels), 'cells': cells},
        grades={f'{space_name(c.J)}/{c.epsilon!r}': c.grade for c in cells}), out)
    return 0


def cmd_illposed(opts: RunOptions, ms: Sequence[int]) -> int:
    """Data and solution errors caused by sin(m |x|) / m^2 for each m."""
    log = get_logger(LOGGER_ID)
    b = build_problem(opts)
    cfg = RegularizationConfig(
        delta=DEFAULT_DELTA if opts.delta is None else opts.delta, p_minus_q=opts.p_minus_q,
        big_m=opts.big_m, manual_J=opts.J, frequency_unit=b.frequency_unit)
    rows = illposedness_table(b, ms, cfg)
    out = opts.out
    out.mkdir(parents=True, exist_ok=True)
    write_illposed_table(rows, out / OutputPaths.illposed_table)
    for row in rows:
        log.info(f'm={row.m}: data error {row.data_error:.3e}, unregularized {row.solution_error:.3e}, '
                 f'regularized {row.regularized_error:.3e}, bound {row.ratio_bound:.3e}')
    store_manifest(_manifest('illposed', opts, b, t=0.0, reports={'rows': rows, 'config': cfg}), out)
    return 0


def cmd_solve(opts: RunOptions, input_path: Path) -> int:
    """Regularized backward solve of user-supplied final data."""
    log = get_logger(LOGGER_ID)
    final = read_field(input_path)
    if opts.kappa is None:
        raise DomainError('--kappa is required for solve')
    if opts.J is None and opts.delta is None:
        raise DomainError('solve needs --delta (level rule) or --J (manual level)')
    profile = profile_from_spec(opts.kappa, 1.0 if opts.T is None else opts.T)
    t = 0.0 if opts.t is None else opts.t
    cfg = RegularizationConfig(
        delta=DEFAULT_DELTA if opts.delta is None else opts.delta, p_minus_q=opts.p_minus_q,
        big_m=opts.big_m, manual_J=opts.J,
        frequency_unit=1.0 if opts.frequency_unit is None else opts.frequency_unit)
    reconstruction, report = regularized_solve(final, t, profile, cfg)
    if report.saturated:
        log.warning('amplification saturated; the reconstruction is not reliable')

    out = opts.out
    out.mkdir(parents=True, exist_ok=True)
    write_field(reconstruction, out / OutputPaths.solve_output)
    write_key_values(report.to_json(), out / OutputPaths.solve_report)
    log.info(f'level J={report.J_used}, largest gain {report.max_amplification:.3e}')
    manifest = _manifest('solve', opts, t=t, J=report.J_used, kappa=profile.spec(), T=profile.horizon,
                         grid=grid_to_json(final.grid), frequency_unit=cfg.frequency_unit,
                         reports={'solve': report, 'config': cfg})
    store_manifest(manifest, out)
    return 0
