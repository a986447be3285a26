import argparse
import concurrent.futures
import os
import sys
import numpy as np
from warpflow import common, config, curve, flow, warp


max_harmonic = 8
deficit_tolerance = 1e-8
report_header = ['sample', 'L', 'A', 'deficit', 'relative_deficit', 'flagged']


def random_curves(warp_potential, n, m, seed):
    '''m seeded random radial graphs with harmonics up to max_harmonic, centred in
       the warp domain and staying inside its central half'''
    rng = np.random.default_rng(seed)
    centre = 0.5 * (warp_potential.r_min + warp_potential.r_max)
    budget = 0.25 * (warp_potential.r_max - warp_potential.r_min)
    theta = curve.grid(n)
    curves = []
    for i in range(m):
        harmonics = rng.integers(1, max_harmonic + 1)
        cos_coeffs = rng.uniform(-1, 1, size=harmonics)
        sin_coeffs = rng.uniform(-1, 1, size=harmonics)
        scale = budget * rng.uniform(0, 1) / (np.sum(np.abs(cos_coeffs)) + np.sum(np.abs(sin_coeffs)))
        rho = curve.harmonic_values(
            theta,
            centre,
            cos={k + 1: scale * x for k, x in enumerate(cos_coeffs)},
            sin={k + 1: scale * x for k, x in enumerate(sin_coeffs)},
        )
        curves.append(curve.RadialCurve(warp_potential, rho))
    return curves


def evaluate(c):
    L = c.length()
    deficit = float(c.iso_difference())
    relative = deficit / (L * L)
    return L, c.area(), deficit, relative, bool(relative < -deficit_tolerance)


def cmd_isocheck(run_config, outdir=None, threads=1, force=False, verbose=False):
    '''Evaluates L^2 - F(A) over m sample curves: the configured initial curve
       (if any) followed by seeded random ones. Returns the exit code'''
    m = run_config.isocheck['m']
    try:
        m = int(m)
        if m < 0:
            raise ValueError
        samples = []
        if m > 0 and run_config.initial is not None:
            samples.append(run_config.initial_curve())
        samples.extend(random_curves(run_config.warp, run_config.n, m - len(samples), run_config.seed))
        if outdir is not None:
            common.make_outdir(outdir, force=force)
    except (ValueError, TypeError):
        print('isocheck "m" must be a nonnegative integer. Cannot continue', file=sys.stderr)
        return 2
    except (config.Error, common.Error, curve.Error, warp.Error) as err:
        print(err, file=sys.stderr)
        return 2

    beta_min, beta_max = run_config.warp.beta_range()
    beta_warning = beta_min < -warp.family_beta_tolerance or beta_max > 1 + warp.family_beta_tolerance
    if beta_warning:
        print('WARNING: beta ranges over [', beta_min, ', ', beta_max, '] on the warp domain, outside [0, 1]. The isoperimetric inequality may fail', sep='', file=sys.stderr)

    if verbose:
        print('{:_^79}'.format(' Running isocheck '), flush=True)
        print('Samples:', len(samples), 'seed:', run_config.seed, 'threads:', threads)

    try:
        if threads > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
                results = list(executor.map(evaluate, samples))
        else:
            results = [evaluate(c) for c in samples]
    except (warp.Error, curve.Error, flow.Error) as err:
        print('Error:', err, file=sys.stderr)
        return 3

    rows = [(i,) + result for i, result in enumerate(results)]
    report = {
        'm': m,
        'seed': run_config.seed,
        'n': run_config.n,
        'warp': run_config.warp.to_spec(),
        'beta_range': [beta_min, beta_max],
        'beta_warning': beta_warning,
        'min_deficit': min((r[3] for r in rows), default=None),
        'min_relative_deficit': min((r[4] for r in rows), default=None),
        'flagged': [r[0] for r in rows if r[5]],
    }

    if outdir is not None:
        common.write_info_file(os.path.join(outdir, '00.info.txt'), 'isocheck')
        common.write_csv(os.path.join(outdir, 'isocheck.csv'), report_header, [r[:5] + (int(r[5]),) for r in rows])
        common.write_json(os.path.join(outdir, 'isocheck.json'), report)

    print('Samples:', len(rows))
    print('Min deficit:', report['min_deficit'])
    print('Min relative deficit:', report['min_relative_deficit'])
    for i in report['flagged']:
        print('FLAGGED: sample', i, 'has L^2 - F(A) =', rows[i][3])

    return 0


def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Checks the isoperimetric inequality L^2 >= F(A) on random radial graphs',
        usage = 'warpflow isocheck [options] --config <config.json>')
    parser.add_argument('--config', help='JSON run configuration', required=True, metavar='FILENAME')
    parser.add_argument('--out', help='Output directory. If not given, report is only printed', metavar='DIR')
    parser.add_argument('--seed', type=int, help='Random seed. Overrides "seed" in the config file', metavar='INT')
    parser.add_argument('--n', type=int, help='Grid size. Overrides "n" in the config file', metavar='INT')
    parser.add_argument('--m', type=int, help='Number of sample curves. Overrides isocheck "m" in the config file', metavar='INT')
    parser.add_argument('--threads', type=int, help='Number of threads [%(default)s]', default=1, metavar='INT')
    parser.add_argument('--force', action='store_true', help='Overwrite output directory if it already exists')
    parser.add_argument('--verbose', action='store_true', help='Be verbose')
    options = parser.parse_args(args)

    try:
        run_config = config.load(options.config)
        run_config.override(out=options.out, seed=options.seed, n=options.n)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    if options.m is not None:
        run_config.isocheck['m'] = options.m

    return cmd_isocheck(run_config, outdir=options.out, threads=options.threads, force=options.force, verbose=options.verbose)
