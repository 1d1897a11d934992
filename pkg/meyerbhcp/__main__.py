"""meyerbhcp
Meyer-wavelet regularization of the backward heat problem with a time-dependent diffusivity.

Usage:
  meyerbhcp demo --example=<id> [options]
  meyerbhcp sweep --example=<id> [--epsilons=<list>] [--levels=<list>] [options]
  meyerbhcp illposed --example=<id> [--m=<list>] [options]
  meyerbhcp solve <input> --kappa=<profile> [options]
  meyerbhcp (-h | --help)
  meyerbhcp --version

Options:
  --example=<id>      Benchmark problem, 1 to 5.
  --epsilon=<eps>     Noise scale [default: 0.001].
  --epsilons=<list>   Comma separated noise scales [default: 0.1,0.01,0.001,0.0001].
  --levels=<list>     Comma separated levels [default: 2,3,4,5,6].
  --m=<list>          Comma separated perturbation frequencies [default: 4,8,16].
  --seed=<n>          Noise seed [default: 4].
  --pq=<p-q>          Smoothness gap p - q of the level rule [default: 0].
  --bigM=<M>          A-priori bound M of the level rule [default: 1].
  --J=<level>         Use this level instead of the level rule.
  --delta=<delta>     Noise level for the level rule (demo: defaults to the measured one).
  --t=<t>             Time to reconstruct (default: the problem's, 0 for solve).
  --kappa=<profile>   affine:<slope>,<intercept> | rational100exp | file:<csv>
  --T=<T>             Final time (default: the problem's, 1 for solve).
  --grid=<N[,N]>      Samples per axis, powers of two.
  --box=<a,b[,a,b]>   Periodic box per axis.
  --unit=<u>          Frequency unit of levels.
  --out=<dir>         Output directory [default: out].
  -h --help           Show this screen.
  --version           Show version.

Environment:
  BHCP_THREADS        Sweep worker threads, 0 runs serially [default: 0].
  BHCP_LOG_LEVEL      Log level [default: INFO].
"""

from pathlib import Path
from typing import Callable, List, Optional
import sys

from docopt import docopt, DocoptExit

from meyerbhcp.cli_io.commands import RunOptions, cmd_demo, cmd_illposed, cmd_solve, cmd_sweep
from meyerbhcp.errors import BhcpError, DomainError, FieldFileError
from meyerbhcp.logging_utils import get_logger
from meyerbhcp.version import __version__, get_current_release_notes

EXIT_SUCCESS = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_USAGE = 2


def _parse_list(text: str, convert: Callable, flag: str) -> List:
    try:
        values = [convert(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise DomainError(f'{flag}: cannot parse {text!r}')
    if not values:
        raise DomainError(f'{flag}: expected at least one value')
    return values


def _optional(arguments, flag: str, convert: Callable):
    text = arguments[flag]
    if text is None:
        return None
    try:
        return convert(text)
    except ValueError:
        raise DomainError(f'{flag}: cannot parse {text!r}')


def options_from_arguments(arguments, argv: List[str]) -> RunOptions:
    return RunOptions(
        example=_optional(arguments, '--example', int),
        epsilon=_optional(arguments, '--epsilon', float),
        seed=_optional(arguments, '--seed', int),
        p_minus_q=_optional(arguments, '--pq', float),
        big_m=_optional(arguments, '--bigM', float),
        J=_optional(arguments, '--J', int),
        delta=_optional(arguments, '--delta', float),
        t=_optional(arguments, '--t', float),
        kappa=arguments['--kappa'],
        T=_optional(arguments, '--T', float),
        grid=_optional(arguments, '--grid', lambda s: _parse_list(s, int, '--grid')),
        box=_optional(arguments, '--box', lambda s: _parse_list(s, float, '--box')),
        frequency_unit=_optional(arguments, '--unit', float),
        out=Path(arguments['--out']),
        argv=list(argv),
    )


def run(arguments, argv: List[str]) -> int:
    opts = options_from_arguments(arguments, argv)
    if arguments['demo']:
        return cmd_demo(opts)
    if arguments['sweep']:
        return cmd_sweep(
            opts,
            _parse_list(arguments['--epsilons'], float, '--epsilons'),
            _parse_list(arguments['--levels'], int, '--levels'),
        )
    if arguments['illposed']:
        return cmd_illposed(opts, _parse_list(arguments['--m'], int, '--m'))
    if arguments['solve']:
        return cmd_solve(opts, Path(arguments['<input>']))
    raise DocoptExit()


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    log = get_logger('meyerbhcp.cli')
    try:
        version = f'meyerbhcp {__version__}\n{get_current_release_notes().rstrip()}'
        arguments = docopt(__doc__, argv=argv, version=version)
        return run(arguments, argv)
    except DocoptExit as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, FieldFileError) as e:
        log.error(str(e))
        print(__doc__.split('Options:')[0].strip(), file=sys.stderr)
        return EXIT_USAGE
    except BhcpError as e:
        log.error(f'{e.__class__.__name__}: {e}')
        return EXIT_NUMERICAL_FAILURE


if __name__ == '__main__':
    sys.exit(main())
