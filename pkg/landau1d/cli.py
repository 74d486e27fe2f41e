#!/usr/bin/env python3
"""
Copyright Reply.com or its affiliates. All Rights Reserved.
SPDX-License-Identifier: Apache-2.0
Permission is hereby granted, free of charge, to any person obtaining a copy of this
software and associated documentation files (the "Software"), to deal in the Software
without restriction, including without limitation the rights to use, copy, modify,
merge, publish, distribute, sublicense, and/or sell copies of the Software, and to
permit persons to whom the Software is furnished to do so.
THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED,
INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A
PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.
"""

import argparse
import logging
import math
import sys

import numpy as np

from . import __version__
from .binding import binding_report, critical_charge
from .configuration import Configuration
from .eigensolve import GridPolicy, converge, ground_state
from .errors import DomainError
from .landscape import PROFILE_CHARGES, classify_regime, find_critical_points, section_profiles, surface_table
from .liebbound import consistency_lattice, convexity_chain_scan, ionization_bound, pair_inequality_scan
from .logger import VERBOSITY_LEVELS, setup_logging, trap_exception
from .model import ModelParams, assemble
from .records import RunConfig, build_record, write_csv, write_json
from .specfun import (GUARD_BAND, PotentialKind, g_bound, localization_error, localization_error_prime,
                      nu, nu_prime, nu_second, potential, v0)

POTENTIAL_KINDS = ('v0', 'vm', 'cutoff', 'coulomb', 'g3', 'gpi', 'g4', 'all')
ADMISSIBLE_KINDS = ('v0', 'cutoff')


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, not {text}")
    return value


def positive_float(text):
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, not {text}")
    return value


def real_list(text):
    try:
        return [float(item) for item in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, not '{text}'")


def region(text):
    values = real_list(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"expected xmin,xmax,ymin,ymax, not '{text}'")
    return tuple(values)


def positions(arguments):
    return np.linspace(arguments.xmin, arguments.xmax, arguments.steps + 1)


def command_potential(arguments):
    xs = positions(arguments)
    if arguments.kind == 'all':
        if arguments.m != 0 or arguments.B != 1.0:
            raise DomainError("Potentials are tabulated together at unit field and level 0")
        coulomb = np.full_like(xs, np.inf)
        away = np.abs(xs) >= GUARD_BAND
        coulomb[away] = potential(PotentialKind.coulomb(), xs[away])
        rows = [dict(x=x, cutoff=a, v0=b, coulomb=c)
                for x, a, b, c in zip(xs, potential(PotentialKind.cutoff(), xs), v0(xs), coulomb)]
    else:
        kind = PotentialKind.parse(arguments.kind, m=arguments.m, B=arguments.B)
        rows = [dict(x=x, value=value) for x, value in zip(xs, np.atleast_1d(potential(kind, xs)))]
    write_csv(arguments.out, rows)
    return dict(rows=len(rows), out=arguments.out)


def command_surface(arguments):
    rows = surface_table(arguments.Z, arguments.B, xs=positions(arguments))
    write_csv(arguments.out, rows, columns=['x', 'y', 'w'])
    return dict(rows=len(rows), out=arguments.out)


def policy_from(arguments, params):
    return GridPolicy.default_for(params,
                                  half_width=arguments.half_width,
                                  spacing=arguments.spacing,
                                  levels=arguments.levels,
                                  stencil_order=arguments.stencil_order)


def command_spectrum(arguments):
    params = ModelParams(n_electrons=arguments.N, Z=arguments.Z, B=arguments.B, alpha=arguments.alpha)
    toggles = Configuration.get_toggles()
    policy = policy_from(arguments, params)
    if arguments.single_grid:
        grid = next(policy.grids())
        operator = assemble(params, grid, max_spacing=policy.max_spacing, max_unknowns=policy.max_unknowns)
        result = ground_state(operator, k=arguments.states or toggles.solver_states,
                              tol=toggles.solver_tolerance, with_vectors=False)
        return dict(params=params, spectrum=result)
    estimate = converge(params, policy=policy, tol=toggles.solver_tolerance)
    return dict(params=params, estimate=estimate)


def command_bind(arguments):
    params = ModelParams(n_electrons=2, Z=arguments.Z, B=arguments.B, alpha=arguments.alpha)
    toggles = Configuration.get_toggles()
    return binding_report(params, grid_policy=policy_from(arguments, params), tol=toggles.solver_tolerance)


def command_zc(arguments):
    return critical_charge(arguments.B, tol=arguments.tol, steps=arguments.steps)


def command_profiles(arguments):
    rows = section_profiles(charges=arguments.Z, B=arguments.B, xs=positions(arguments))
    write_csv(arguments.out, rows, columns=['Z', 'x', 'w_antidiagonal', 'w_axis'])
    return dict(rows=len(rows), out=arguments.out)


def command_critical_points(arguments):
    toggles = Configuration.get_toggles()
    points = find_critical_points(arguments.Z, arguments.B, region=arguments.region,
                                  scan_points=toggles.landscape_scan_points,
                                  step=toggles.landscape_step,
                                  iterations=toggles.landscape_newton_iterations)
    rows = [point.to_dict() for point in points]
    write_csv(arguments.out, rows,
              columns=['x', 'y', 'gradient_norm', 'eigenvalue_1', 'eigenvalue_2', 'kind', 'value', 'cusp'])
    return dict(points=points, out=arguments.out)


def command_regime(arguments):
    toggles = Configuration.get_toggles()
    return classify_regime(arguments.Z, arguments.B,
                           scan_points=toggles.landscape_scan_points,
                           step=toggles.landscape_step,
                           iterations=toggles.landscape_newton_iterations)


def command_envelope(arguments):
    xs = positions(arguments)
    if np.any(xs < 0):
        raise ValueError("Envelope functions are tabulated for x >= 0")
    columns = dict(x=xs, g3=g_bound(3.0, xs), v0=v0(xs), g4=g_bound(4.0, xs), g_pi=g_bound(math.pi, xs))
    rows = [dict(zip(columns.keys(), values)) for values in zip(*columns.values())]
    write_csv(arguments.out, rows)
    return dict(rows=len(rows), out=arguments.out)


def command_odes(arguments):
    xs = positions(arguments)
    columns = dict(x=xs, nu=nu(xs), nu_prime=nu_prime(xs), nu_second=nu_second(xs),
                   localization_error=localization_error(xs),
                   localization_error_prime=localization_error_prime(xs))
    rows = [dict(zip(columns.keys(), values)) for values in zip(*columns.values())]
    write_csv(arguments.out, rows)
    return dict(rows=len(rows), out=arguments.out)


def command_pair_inequality(arguments):
    samples = pair_inequality_scan(PotentialKind.parse(arguments.kind), n_samples=arguments.samples,
                                   extent=arguments.range, seed=arguments.seed)
    failures = [sample for sample in samples if not sample.passed]
    selected = samples if arguments.all else failures
    write_csv(arguments.out, [sample.to_dict() for sample in selected], columns=['x', 'y', 'lhs', 'pass'])
    return dict(samples=len(samples), failures=len(failures), out=arguments.out)


def command_convexity_chain(arguments):
    rows = convexity_chain_scan(n_samples=arguments.samples, extent=arguments.range, seed=arguments.seed)
    failures = [row for row in rows if not row['holds']]
    write_csv(arguments.out, rows if arguments.all else failures,
              columns=['x', 'w', 'lhs', 'mid', 'rhs', 'holds'])
    return dict(samples=len(rows), failures=len(failures), out=arguments.out)


def command_bound(arguments):
    return ionization_bound(arguments.Z, arguments.B, PotentialKind.parse(arguments.kind))


def command_consistency(arguments):
    samples = consistency_lattice(charges=arguments.Z, fields=arguments.B)
    return dict(consistent=all(sample.consistent for sample in samples), samples=samples)


def add_positions(parser, xmin, xmax, steps):
    parser.add_argument('--xmin', type=float, default=xmin)
    parser.add_argument('--xmax', type=float, default=xmax)
    parser.add_argument('--steps', type=positive_int, default=steps, help="number of intervals")


def add_grid(parser):
    parser.add_argument('--half-width', type=positive_float, default=None)
    parser.add_argument('--spacing', type=positive_float, default=None, help="coarsest grid spacing")
    parser.add_argument('--levels', type=positive_int, default=None)
    parser.add_argument('--stencil-order', type=int, choices=(2, 4), default=None)


def add_scan(parser):
    parser.add_argument('--samples', type=positive_int, default=None)
    parser.add_argument('--range', type=positive_float, default=None)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--all', action='store_true', help="write every sample, not only failures")


def build_parser():
    parser = argparse.ArgumentParser(prog='landau1d',
                                     description="One-dimensional model of atoms in strong magnetic fields")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--settings', default=None, help="YAML or JSON file of default settings")
    parser.add_argument('--verbosity', choices=VERBOSITY_LEVELS, default=None)
    parser.add_argument('--threads', type=positive_int, default=None, help="cap on parallel jobs")
    parser.add_argument('--record', default=None, help="JSON run record for commands that emit CSV")
    commands = parser.add_subparsers(dest='command', metavar='command', required=True)

    command = commands.add_parser('potential', help="tabulate a potential")
    command.add_argument('--kind', choices=POTENTIAL_KINDS, default='v0')
    command.add_argument('--m', type=int, default=0)
    command.add_argument('--B', type=positive_float, default=1.0)
    add_positions(command, 0.0, 6.0, 600)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_potential, emits='csv')

    command = commands.add_parser('surface', help="tabulate the two-electron surface W(x, y)")
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    add_positions(command, -6.0, 6.0, 120)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_surface, emits='csv')

    command = commands.add_parser('spectrum', help="ground energy of one or two electrons")
    command.add_argument('--N', type=int, choices=(1, 2), default=1)
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--alpha', type=float, default=1.0)
    command.add_argument('--states', type=positive_int, default=None)
    command.add_argument('--single-grid', action='store_true', help="solve on the coarsest grid only")
    add_grid(command)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_spectrum, emits='json')

    command = commands.add_parser('bind', help="decide whether two electrons bind")
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--alpha', type=float, default=1.0)
    add_grid(command)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_bind, emits='json')

    command = commands.add_parser('zc', help="bracket the critical charge")
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--tol', type=positive_float, default=1e-2)
    command.add_argument('--steps', type=positive_int, default=None, help="charges on the initial scan")
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_zc, emits='json')

    landscape = commands.add_parser('landscape', help="analysis of the two-electron surface")
    analyses = landscape.add_subparsers(dest='analysis', metavar='analysis', required=True)

    command = analyses.add_parser('profiles', help="sections along y=-x and y=0")
    command.add_argument('--Z', type=real_list, default=list(PROFILE_CHARGES))
    command.add_argument('--B', type=positive_float, default=1.0)
    add_positions(command, -6.0, 6.0, 240)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_profiles, emits='csv')

    command = analyses.add_parser('critical-points', help="stationary points in a region")
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--region', type=region, default=(-10.0, 10.0, -10.0, 10.0))
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_critical_points, emits='csv')

    command = analyses.add_parser('regime', help="classify the surface at one charge")
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_regime, emits='json')

    verify = commands.add_parser('verify', help="numerical checks of inequalities")
    checks = verify.add_subparsers(dest='check', metavar='check', required=True)

    command = checks.add_parser('envelope', help="g3, V0, g4 and g_pi side by side")
    add_positions(command, 0.0, 10.0, 1000)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_envelope, emits='csv')

    command = checks.add_parser('odes', help="1/V0, its derivatives, and the localization error")
    add_positions(command, 0.0, 10.0, 1000)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_odes, emits='csv')

    command = checks.add_parser('pair-inequality', help="quasi-random scan of the pair inequality")
    command.add_argument('--kind', choices=ADMISSIBLE_KINDS, default='v0')
    add_scan(command)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_pair_inequality, emits='csv')

    command = checks.add_parser('convexity-chain', help="quasi-random scan of the convexity chain")
    add_scan(command)
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_convexity_chain, emits='csv')

    command = commands.add_parser('bound', help="ionization threshold")
    command.add_argument('--Z', type=positive_float, required=True)
    command.add_argument('--B', type=positive_float, default=1.0)
    command.add_argument('--kind', choices=ADMISSIBLE_KINDS, default='v0')
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_bound, emits='json')

    command = commands.add_parser('consistency', help="compare the threshold with binding verdicts")
    command.add_argument('--Z', type=real_list, default=[0.1, 0.2, 0.3])
    command.add_argument('--B', type=real_list, default=[0.01, 0.04])
    command.add_argument('--out', required=True)
    command.set_defaults(handler=command_consistency, emits='json')

    return parser


def run_config(arguments):
    parameters = {key: value for key, value in vars(arguments).items()
                  if key not in ('handler', 'emits', 'settings', 'verbosity', 'threads', 'record')}
    command = ' '.join(item for item in (arguments.command,
                                         getattr(arguments, 'analysis', None),
                                         getattr(arguments, 'check', None)) if item)
    seed = getattr(arguments, 'seed', None)
    return RunConfig(command=command,
                     parameters=parameters,
                     seed=seed if seed is not None else Configuration.get_toggles().scan_seed,
                     settings=Configuration.as_dict())


def run(argv=None):
    ''' execute one command, and return 0 on success, 1 on computational error, 2 on usage error '''
    parser = build_parser()
    try:
        arguments = parser.parse_args(argv)
    except SystemExit as exit:
        return 0 if exit.code in (0, None) else 2

    try:
        toggles = Configuration.initialize(stream=arguments.settings)
        if arguments.threads:
            toggles.automation_threads = arguments.threads
        setup_logging(verbosity=arguments.verbosity or toggles.automation_verbosity)
    except (AttributeError, OSError, ValueError) as error:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"landau1d: error: {error}\n")
        return 2

    config = run_config(arguments)
    logging.info(f"Running '{config.command}' with landau1d {__version__}")
    result = trap_exception(arguments.handler)(arguments)

    failed = getattr(result, 'status', None) in ('DEBUG', 'ERROR')
    error = dict(error=result.error, message=result.message) if failed else None
    path = arguments.out if arguments.emits == 'json' else arguments.record
    if path:
        write_json(path, build_record(config, result=None if failed else result, error=error))
    return 1 if failed else 0


def main():
    return run(sys.argv[1:])
