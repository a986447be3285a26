import argparse
import os
import sys
from warpflow import common, config, curve, flow, warp


numerical_errors = (flow.Error, warp.Error, curve.Error)


def cmd_flow(run_config, outdir, force=False, verbose=False):
    '''Runs the flow and writes trace.csv, summary.json, final_curve.csv.
       Returns the exit code'''
    try:
        initial = run_config.initial_curve()
        common.make_outdir(outdir, force=force)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    common.write_info_file(os.path.join(outdir, '00.info.txt'), 'flow')
    run_config.flow.verbose = verbose

    try:
        trace = flow.evolve(initial, run_config.flow, raise_error=False)
    except numerical_errors as err:
        print('Error:', err, file=sys.stderr)
        return 3

    trace.write_csv(os.path.join(outdir, 'trace.csv'))
    trace.final_curve.write_csv(os.path.join(outdir, 'final_curve.csv'))
    summary = trace.summary()
    summary['config'] = run_config.to_dict()
    if trace.error is not None:
        summary['error'] = type(trace.error).__name__ + ': ' + str(trace.error)
    common.write_json(os.path.join(outdir, 'summary.json'), summary)

    if trace.termination == 'error':
        print(type(trace.error).__name__ + ':', trace.error, file=sys.stderr)
        return 3

    if verbose:
        print('Final radius', summary['final_radius'], 'predicted', summary['predicted_radius'])
    return 0


def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Evolves a radial graph by the area-preserving flow',
        usage = 'warpflow flow [options] --config <config.json>')
    parser.add_argument('--config', help='JSON run configuration', required=True, metavar='FILENAME')
    parser.add_argument('--out', help='Output directory. Overrides "out" in the config file', metavar='DIR')
    parser.add_argument('--seed', type=int, help='Random seed. Overrides "seed" in the config file', metavar='INT')
    parser.add_argument('--n', type=int, help='Grid size. Overrides "n" in the config file', metavar='INT')
    parser.add_argument('--tmax', type=float, help='Time horizon. Overrides flow "t_max" in the config file', metavar='FLOAT')
    parser.add_argument('--force', action='store_true', help='Overwrite output directory if it already exists')
    parser.add_argument('--verbose', action='store_true', help='Be verbose')
    options = parser.parse_args(args)

    try:
        run_config = config.load(options.config)
        run_config.override(out=options.out, seed=options.seed, n=options.n, tmax=options.tmax)
    except (config.Error, common.Error) as err:
        print(err, file=sys.stderr)
        return 2

    if run_config.out is None:
        print('No output directory given. Use --out or "out" in the config file. Cannot continue', file=sys.stderr)
        return 2

    return cmd_flow(run_config, run_config.out, force=options.force, verbose=options.verbose)
