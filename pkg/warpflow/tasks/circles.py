import argparse
import math
import os
import sys
import numpy as np
from warpflow import common, config, spaceform, warp


max_profile_residual = 1e-7
max_closure_defect = 1e-8
max_path_deviation = 1e-6


def cmd_circles(model, a, R, alpha=0.0, ds=1e-3, n=512, seed=None, outdir=None, force=False, verbose=False):
    '''Builds an explicit translated circle, checks its r_s profile, and integrates
       the characteristic ODE from its far point. Returns 0 if every check passes'''
    try:
        spec = spaceform.CircleSpec(model, a, R, alpha=alpha)
        warp_potential = spec.default_warp()
        circle = spec.to_curve(n, warp_potential=warp_potential)
        if outdir is not None:
            common.make_outdir(outdir, force=force)
    except (spaceform.Error, common.Error, warp.Error) as err:
        print(err, file=sys.stderr)
        return 2

    try:
        fit = spaceform.rs_profile_residual(circle, spec.a, spec.alpha)
        path = spaceform.integrate_characteristic(warp_potential, spec.a, spec.alpha, spec.far_point(), ds, verbose=verbose)
        path_curve = path.to_curve(warp_potential, n)
    except (spaceform.Error, warp.Error) as err:
        print('Error:', err, file=sys.stderr)
        return 3

    deviation = float(np.max(np.abs(path_curve.rho - circle.rho)))
    passed = bool(fit.residual < max_profile_residual and path.closure_defect < max_closure_defect and deviation < max_path_deviation)
    report = {
        'model': spec.model,
        'a': spec.a,
        'alpha': spec.alpha,
        'R': spec.R,
        'n': n,
        'ds': ds,
        'seed': seed,
        'profile_residual': fit.residual,
        'closure_defect': path.closure_defect,
        'path_deviation': deviation,
        'passed': passed,
    }

    if outdir is not None:
        common.write_info_file(os.path.join(outdir, '00.info.txt'), 'circles')
        circle.write_csv(os.path.join(outdir, 'circle.csv'))
        path.write_csv(os.path.join(outdir, 'path.csv'))
        common.write_json(os.path.join(outdir, 'circles.json'), report)

    print('Profile residual:', fit.residual)
    print('Closure defect:', path.closure_defect)
    print('Path deviation:', deviation)
    print('PASS' if passed else 'FAIL')
    return 0 if passed else 1


def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Checks explicit translated circles against the r_s profile and the characteristic ODE',
        usage = 'warpflow circles [options]')
    parser.add_argument('--config', help='JSON run configuration. Its "circle" entry gives defaults for the options below', metavar='FILENAME')
    parser.add_argument('--model', choices=common.allowed_models, help='Model surface [euclidean]')
    parser.add_argument('--a', type=float, help='Offset ratio a (euclidean) or b (sphere), |a| < 1 [0]', metavar='FLOAT')
    parser.add_argument('--alpha', type=float, help='Axis angle (euclidean only) [0]', metavar='FLOAT')
    parser.add_argument('--R', type=float, help='Circle radius (geodesic on the sphere) [1]', metavar='FLOAT')
    parser.add_argument('--ds', type=float, help='Arc-length step of the characteristic ODE [0.001]', metavar='FLOAT')
    parser.add_argument('--n', type=int, help='Grid size [512]', metavar='INT')
    parser.add_argument('--seed', type=int, help='Random seed, recorded in the report. Circle checks draw no random numbers', metavar='INT')
    parser.add_argument('--out', help='Output directory. If not given, report is only printed', metavar='DIR')
    parser.add_argument('--force', action='store_true', help='Overwrite output directory if it already exists')
    parser.add_argument('--verbose', action='store_true', help='Be verbose')
    options = parser.parse_args(args)

    values = {'model': 'euclidean', 'a': 0.0, 'alpha': 0.0, 'R': 1.0, 'ds': 1e-3, 'n': 512}
    seed = options.seed
    if options.config is not None:
        try:
            run_config = config.load(options.config)
        except (config.Error, common.Error) as err:
            print(err, file=sys.stderr)
            return 2
        values.update(run_config.circle)
        if seed is None:
            seed = run_config.seed

    if 'b' in values:
        values['a'] = values.pop('b')

    for key in ['model', 'a', 'alpha', 'R', 'ds', 'n']:
        if getattr(options, key) is not None:
            values[key] = getattr(options, key)

    unknown = set(values) - {'model', 'a', 'alpha', 'R', 'ds', 'n'}
    try:
        ok = len(unknown) == 0 and math.isfinite(float(values['ds'])) and int(values['n']) == values['n']
    except (TypeError, ValueError):
        ok = False
    if not ok:
        print('Bad circle options: ' + str(values) + '. Cannot continue', file=sys.stderr)
        return 2

    return cmd_circles(
        values['model'],
        values['a'],
        values['R'],
        alpha=values['alpha'],
        ds=float(values['ds']),
        n=int(values['n']),
        seed=seed,
        outdir=options.out,
        force=options.force,
        verbose=options.verbose,
    )
