"""numrad command line.

    numrad radius --t "[i,0;0,0]"
    numrad ortho --eps 0 --t "[i,0;0,0]" --s "[0,1;0,-1]" --method direct
    numrad paper-check --format json

Results go to stdout; logs go to stderr. Exit codes: 0 success, 2 bad input,
1 non-convergence or a failed reference claim.
"""
import json
import logging
import sys
from argparse import ArgumentParser
from typing import Dict, Optional, List, TextIO

import yaml

from configs.solver_interface import PROFILE_ENUMS
from module.base.errors import (
    ConvergenceError,
    DegenerateOperatorError,
    LiteralError,
    MatrixError,
    ParameterError
)
from module.cli.emitters import OUTPUT_FORMATS, emit_boundary, render, to_record
from module.cli.matrix_literal import load_matrix_file, parse_matrix
from module.cli.reference_check import reference_report
from module.linalg.linalg_core import CMatrix
from module.oracle.oracle import Oracle
from module.settings import Settings
from module.wderiv.ortho import DECIDER_METHODS, OmegaOrthogonality

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# knob that --tol / --grid set for each command
TOL_KNOBS = {
    'radius': 'radius_tol',
    'crawford': 'radius_tol',
    'range': 'radius_tol',
    'deriv': 'derivative_tol',
    'inf-deriv': 'derivative_tol',
    'min-eps': 'derivative_tol',
    'ortho': 'decision_tol',
    'bj-ortho': 'decision_tol',
    'oracle-scan': 'decision_tol',
    'paper-check': 'radius_tol'
}
GRID_KNOBS = {
    'radius': 'theta_grid',
    'crawford': 'theta_grid',
    'range': 'theta_grid',
    'deriv': 'inner_grid',
    'inf-deriv': 'search_grid',
    'min-eps': 'search_grid',
    'ortho': 'search_grid',
    'bj-ortho': 'direct_grid',
    'oracle-scan': 'inner_grid',
    'paper-check': 'theta_grid'
}
PAIR_COMMANDS = ('deriv', 'inf-deriv', 'ortho', 'min-eps', 'bj-ortho', 'oracle-scan')
COMMAND_ALIASES = {'reference-check': 'paper-check'}


def _common_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--tol', dest='tol', type=float, default=None,
                        help="overrides the command's primary tolerance")
    common.add_argument('--grid', dest='grid', type=int, default=None,
                        help="overrides the command's primary angular grid")
    common.add_argument('--seed', dest='seed', type=int, default=None, help='seed for seeded checks')
    common.add_argument('--format', dest='format', choices=OUTPUT_FORMATS, default='text')
    common.add_argument('--profile', dest='profile', default=PROFILE_ENUMS.DEFAULT.value,
                        choices=[p.value for p in PROFILE_ENUMS], type=str.upper)
    common.add_argument('--config', dest='config', default=None, help='YAML file with solver knobs')
    common.add_argument('--log-level', dest='log_level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], type=str.upper)
    return common


def _matrix_parser(pair: bool) -> ArgumentParser:
    matrices = ArgumentParser(add_help=False)
    matrices.add_argument('matrix', nargs='?', default=None, help='literal for T, e.g. "[1,1;0,-1]"')
    matrices.add_argument('--t', dest='t', default=None, help='literal for T')
    matrices.add_argument('--t-file', dest='t_file', default=None, help='JSON matrix file for T')
    if pair:
        matrices.add_argument('--s', dest='s', default=None, help='literal for S')
        matrices.add_argument('--s-file', dest='s_file', default=None, help='JSON matrix file for S')
    return matrices


def get_arguments(argv: Optional[List[str]] = None) -> Optional[Dict]:
    parser = ArgumentParser(prog='numrad', description='numerical radius and approximate omega-orthogonality')
    common = _common_parser()
    single, pair = _matrix_parser(False), _matrix_parser(True)
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('radius', parents=[common, single], help='numerical radius with certified enclosure')
    commands.add_parser('crawford', parents=[common, single], help='Crawford number')
    range_ = commands.add_parser('range', parents=[common, single], help='boundary points of the numerical range')
    range_.add_argument('--samples', dest='samples', type=int, default=64)

    deriv = commands.add_parser('deriv', parents=[common, pair], help='omega-derivative along one angle')
    deriv.add_argument('--theta', dest='theta', type=float, default=0.0)
    commands.add_parser('inf-deriv', parents=[common, pair], help='infimum of the omega-derivative over angles')
    ortho = commands.add_parser('ortho', parents=[common, pair], help='approximate omega-orthogonality')
    ortho.add_argument('--eps', dest='eps', type=float, required=True)
    ortho.add_argument('--method', dest='method', default=DECIDER_METHODS.DERIVATIVE.value,
                       choices=[m.value for m in DECIDER_METHODS])
    commands.add_parser('min-eps', parents=[common, pair], help='smallest epsilon for omega-orthogonality')
    bj = commands.add_parser('bj-ortho', parents=[common, pair], help='approximate orthogonality in operator norm')
    bj.add_argument('--eps', dest='eps', type=float, required=True)
    commands.add_parser('paper-check', aliases=list(COMMAND_ALIASES), parents=[common],
                        help='reproduce the reference table')
    scan = commands.add_parser('oracle-scan', parents=[common, pair], help='brute-force lambda scan')
    scan.add_argument('--eps', dest='eps', type=float, required=True)
    scan.add_argument('--grid-r', dest='grid_r', type=int, default=64)
    scan.add_argument('--grid-theta', dest='grid_theta', type=int, default=64)

    args = vars(parser.parse_args(argv))
    args['command'] = COMMAND_ALIASES.get(args['command'], args['command'])
    return args


def _overrides(args: dict) -> dict:
    command = args['command']
    overrides = {'seed': args.get('seed')}
    if args.get('tol') is not None:
        overrides[TOL_KNOBS[command]] = args['tol']
    if args.get('grid') is not None:
        knob = GRID_KNOBS[command]
        if command == 'ortho' and args.get('method') == DECIDER_METHODS.DIRECT.value:
            knob = 'direct_grid'
        overrides[knob] = args['grid']
    return overrides


def _matrix(literal: Optional[str], path: Optional[str], name: str) -> CMatrix:
    if literal is not None and path is not None:
        raise ParameterError(f'give {name} either as a literal or as a file, not both')
    if path is not None:
        return load_matrix_file(path)
    if literal is None:
        raise ParameterError(f'missing matrix {name}')
    return parse_matrix(literal)


def _operands(args: dict):
    T = _matrix(args.get('t') if args.get('t') is not None else args.get('matrix'), args.get('t_file'), 'T')
    if args['command'] not in PAIR_COMMANDS:
        return T, None
    return T, _matrix(args.get('s'), args.get('s_file'), 'S')


def _with_verdict(record: dict, orthogonal: bool) -> dict:
    return {'verdict': 'ORTHOGONAL' if orthogonal else 'NOT ORTHOGONAL', **record}


def _write(out: TextIO, text: str, converged: bool = True, what: str = 'result'):
    out.write(text + '\n')
    if not converged:
        raise ConvergenceError(f'{what} did not converge')


def execute(args: dict, out: TextIO):
    settings = Settings({'profile': args['profile'], 'config': args.get('config'), 'overrides': _overrides(args)})
    config = settings.config
    digits = config.output_digits
    fmt = args['format']
    command = args['command']

    if command == 'paper-check':
        report = reference_report(config)
        _write(out, report.render(fmt, digits))
        if not report.passed:
            raise ConvergenceError(f'{len(report.failures)} reference claims were not reproduced')
        return

    T, S = _operands(args)
    orthogonality = OmegaOrthogonality(config)
    settings.testsuite_controller = orthogonality
    numerical_range = orthogonality.numerical_range
    derivation = orthogonality.derivation
    scale = numerical_range.norm(T) if not T.is_zero() else 1.0

    if command == 'radius':
        result = numerical_range.numerical_radius(T)
        record = {'omega': result.omega, 'theta_star': result.theta_star, 'lower': result.lower,
                  'upper': result.upper, 'maximizer': result.maximizer}
        _write(out, render(to_record(record, scale, digits), fmt, digits))
    elif command == 'crawford':
        record = {'crawford': numerical_range.crawford_number(T)}
        _write(out, render(to_record(record, scale, digits), fmt, digits))
    elif command == 'range':
        _write(out, emit_boundary(T, args['samples'], fmt, numerical_range, digits))
    elif command == 'deriv':
        result = derivation.omega_derivative(T, S, args['theta'])
        record = {'value': result.value, 'theta': result.theta, 'converged': result.converged,
                  'residual': result.residual, 'halvings': len(result.quotient_trace) - 1}
        _write(out, render(to_record(record, scale, digits), fmt, digits), result.converged, 'omega-derivative')
    elif command == 'inf-deriv':
        result = derivation.inf_derivative(T, S)
        _write(out, render(to_record(result, scale, digits), fmt, digits), result.converged, 'inf derivative')
    elif command == 'ortho':
        report = orthogonality.is_omega_orthogonal(T, S, args['eps'], args['method'])
        record = _with_verdict(to_record(report, scale, digits), report.orthogonal)
        _write(out, render(record, fmt, digits), report.converged, 'decision')
    elif command == 'min-eps':
        record = {'epsilon_star': orthogonality.min_epsilon(T, S)}
        _write(out, render(to_record(record, scale, digits), fmt, digits))
    elif command == 'bj-ortho':
        report = orthogonality.bj_report(T, S, args['eps'])
        record = _with_verdict(to_record(report, scale, digits), report.orthogonal)
        _write(out, render(record, fmt, digits), report.converged, 'decision')
    elif command == 'oracle-scan':
        margin, argmin = Oracle(config).direct_lambda_scan(T, S, args['eps'], args['grid_r'], args['grid_theta'])
        orthogonal = margin >= -config.decision_tol
        record = {'orthogonal': orthogonal, 'min_margin': margin, 'argmin_lambda': argmin}
        _write(out, render(_with_verdict(to_record(record, scale, digits), orthogonal), fmt, digits))


def run(argv: Optional[List[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    try:
        args = get_arguments(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=args['log_level'], format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT,
                        stream=sys.stderr)
    try:
        execute(args, out)
    except ConvergenceError as e:
        logger.error(e)
        print(f'numrad: {e}', file=sys.stderr)
        return 1
    except (LiteralError, ParameterError, MatrixError, DegenerateOperatorError) as e:
        print(f'numrad: {type(e).__name__}: {e}', file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, yaml.YAMLError) as e:
        print(f'numrad: cannot read input: {e}', file=sys.stderr)
        return 2
    return 0


def main() -> int:
    return run()
