import argparse
import os
import sys
from warpflow import common, config, curve, symmetry, warp


def cmd_symmetrize(run_config, outdir=None, mollify=None, force=False, verbose=False):
    '''Finds the area-equalizing axis of the initial curve, cuts and reflects it,
       and reports the conservation identities. Returns the exit code'''
    try:
        c = run_config.initial_curve()
        if outdir is not None:
            common.make_outdir(outdir, force=force)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    try:
        L0, A0 = c.length(), c.area()
        axis = symmetry.equalizing_axis(c)
        rotated, snapped = symmetry.snap_axis(c, axis)
        cut = symmetry.cut_and_reflect(rotated, snapped)
        if mollify is not None:
            mollified = [symmetry.mollify(x, mollify) for x in (cut.curve1, cut.curve2)]
    except (symmetry.Error, warp.Error, curve.Error) as err:
        print('Error:', err, file=sys.stderr)
        return 3

    report = {
        'alpha': axis.alpha,
        'snapped_alpha': snapped.alpha,
        'rotation': axis.alpha - snapped.alpha,
        'L0': L0,
        'A0': A0,
        'L1': cut.L1,
        'A1': cut.A1,
        'L2': cut.L2,
        'A2': cut.A2,
        'length_sum_error': abs(cut.L1 + cut.L2 - 2 * L0) / L0,
        'area_sum_error': abs(cut.A1 + cut.A2 - 2 * A0) / abs(A0),
        'area_difference': abs(cut.A1 - cut.A2) / abs(A0),
        'lengths_bracket_L0': min(cut.L1, cut.L2) <= L0 <= max(cut.L1, cut.L2),
        'symmetry_defects': [symmetry.symmetry_defect(x, snapped) for x in (cut.curve1, cut.curve2)],
        'n': run_config.n,
        'seed': run_config.seed,
    }
    if mollify is not None:
        report['mollify_width'] = mollify

    if outdir is not None:
        common.write_info_file(os.path.join(outdir, '00.info.txt'), 'symmetrize')
        cut.curve1.write_csv(os.path.join(outdir, 'curve1.csv'))
        cut.curve2.write_csv(os.path.join(outdir, 'curve2.csv'))
        if mollify is not None:
            mollified[0].write_csv(os.path.join(outdir, 'curve1.mollified.csv'))
            mollified[1].write_csv(os.path.join(outdir, 'curve2.mollified.csv'))
        common.write_json(os.path.join(outdir, 'symmetrize.json'), report)

    for key in ['alpha', 'L0', 'L1', 'L2', 'A0', 'A1', 'A2', 'length_sum_error', 'area_sum_error', 'area_difference']:
        print(key, report[key], sep='\t')
    return 0


def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Cuts a radial graph along its area-equalizing axis and reflects each half',
        usage = 'warpflow symmetrize [options] --config <config.json>')
    parser.add_argument('--config', help='JSON run configuration', required=True, metavar='FILENAME')
    parser.add_argument('--out', help='Output directory. If not given, report is only printed', metavar='DIR')
    parser.add_argument('--seed', type=int, help='Random seed. Overrides "seed" in the config file and is recorded in the report', metavar='INT')
    parser.add_argument('--n', type=int, help='Grid size. Overrides "n" in the config file', metavar='INT')
    parser.add_argument('--mollify', type=float, help='Also write both curves mollified with this kernel half-width', metavar='FLOAT')
    parser.add_argument('--force', action='store_true', help='Overwrite output directory if it already exists')
    parser.add_argument('--verbose', action='store_true', help='Be verbose')
    options = parser.parse_args(args)

    try:
        run_config = config.load(options.config)
        run_config.override(seed=options.seed, n=options.n)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    return cmd_symmetrize(run_config, outdir=options.out, mollify=options.mollify, force=options.force, verbose=options.verbose)
