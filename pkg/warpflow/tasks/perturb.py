import argparse
import math
import os
import sys
from warpflow import common, config, curve, warp


def cmd_perturb(run_config, outdir=None, force=False):
    '''Compares (L^2 - F(A))/eps^2 for rho = r0 + eps*g with its small-eps limit'''
    if run_config.perturbation is None:
        print('Run configuration has no "perturbation" entry. Cannot continue', file=sys.stderr)
        return 2

    p = run_config.perturbation
    try:
        r0 = float(p['r0'])
        eps = [float(x) for x in p.get('eps', config.default_eps)]
        g = run_config.perturbation_g()
        if outdir is not None:
            common.make_outdir(outdir, force=force)
    except (TypeError, ValueError):
        print('Bad perturbation "r0" or "eps". Cannot continue', file=sys.stderr)
        return 2
    except (common.Error, curve.Error) as err:
        print(err, file=sys.stderr)
        return 2

    try:
        result = curve.perturbation_coefficient(run_config.warp, r0, g, eps, n=run_config.n)
    except (warp.Error, curve.Error) as err:
        print('Error:', err, file=sys.stderr)
        return 3

    scale = 4 * math.pi ** 2
    report = {
        'r0': r0,
        'beta': result.beta,
        'predicted': result.predicted,
        'normalized': result.normalized,
        'eps': result.eps,
        'measured': result.measured,
        'measured_normalized': [x / scale for x in result.measured],
        'n': run_config.n,
        'seed': run_config.seed,
    }

    if outdir is not None:
        common.write_info_file(os.path.join(outdir, '00.info.txt'), 'perturb')
        common.write_json(os.path.join(outdir, 'perturb.json'), report)

    print('beta(r0)', result.beta, sep='\t')
    print('predicted', result.predicted, 'normalized', result.normalized, sep='\t')
    for e, m in zip(result.eps, result.measured):
        print('eps', e, 'measured', m, 'normalized', m / scale, sep='\t')
    return 0


def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Second-order expansion of the isoperimetric deficit about a slice',
        usage = 'warpflow perturb [options] --config <config.json>')
    parser.add_argument('--config', help='JSON run configuration with a "perturbation" entry', required=True, metavar='FILENAME')
    parser.add_argument('--out', help='Output directory. If not given, report is only printed', metavar='DIR')
    parser.add_argument('--seed', type=int, help='Random seed. Overrides "seed" in the config file and is recorded in the report', metavar='INT')
    parser.add_argument('--n', type=int, help='Grid size. Overrides "n" in the config file', metavar='INT')
    parser.add_argument('--force', action='store_true', help='Overwrite output directory if it already exists')
    options = parser.parse_args(args)

    try:
        run_config = config.load(options.config)
        run_config.override(seed=options.seed, n=options.n)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    return cmd_perturb(run_config, outdir=options.out, force=options.force)
