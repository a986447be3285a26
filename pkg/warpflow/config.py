import copy
import json
import os
import numpy as np
from warpflow import common, curve, flow, warp

class Error (Exception): pass


default_n = 256
default_seed = 42
default_isocheck_samples = 100
default_eps = [1e-2, 3e-3, 1e-3]
allowed_keys = {'warp', 'initial', 'n', 'flow', 'out', 'seed', 'isocheck', 'perturbation', 'circle'}


def _check_harmonics(d, where):
    if not isinstance(d, dict):
        raise Error(where + ' must be a number or a dictionary. Cannot continue')
    unknown = set(d) - {'r0', 'mean', 'cos', 'sin'}
    if len(unknown):
        raise Error('Unknown key(s) in ' + where + ': ' + ', '.join(sorted(unknown)))
    for name in ('cos', 'sin'):
        coeffs = d.get(name, {})
        if not isinstance(coeffs, dict):
            raise Error(where + '["' + name + '"] must be a dictionary of harmonic number -> amplitude')
        for k, amplitude in coeffs.items():
            try:
                ok = int(k) >= 0 and np.isfinite(float(amplitude))
            except (TypeError, ValueError):
                ok = False
            if not ok:
                raise Error('Bad harmonic ' + str(k) + ': ' + str(amplitude) + ' in ' + where)


class RunConfig:
    '''Resolved run configuration. data is the dictionary read from a JSON file,
       overrides from the command line already applied'''
    def __init__(self, data, config_dir='.'):
        if not isinstance(data, dict):
            raise Error('Run configuration must be a JSON object. Cannot continue')
        unknown = set(data) - allowed_keys
        if len(unknown):
            raise Error('Unknown key(s) in run configuration: ' + ', '.join(sorted(unknown)) + '. Cannot continue')
        if 'warp' not in data:
            raise Error('Run configuration has no "warp" entry. Cannot continue')

        self.data = copy.deepcopy(data)
        self.config_dir = config_dir

        try:
            self.warp = warp.from_spec(data['warp'])
        except (warp.Error, TypeError, ValueError) as err:
            raise Error('Bad warp specification: ' + str(err))

        try:
            self.n = int(data.get('n', default_n))
            self.seed = int(data.get('seed', default_seed))
        except (TypeError, ValueError):
            raise Error('"n" and "seed" must be integers. Cannot continue')

        flow_options = data.get('flow', {})
        if not isinstance(flow_options, dict):
            raise Error('"flow" must be a dictionary. Cannot continue')
        try:
            self.flow = flow.FlowConfig(**flow_options)
        except TypeError as err:
            raise Error('Bad flow options: ' + str(err))
        except flow.ConfigError as err:
            raise Error(str(err))

        self.out = data.get('out')
        self.initial = data.get('initial')
        if self.initial is not None and not isinstance(self.initial, (int, float)):
            if isinstance(self.initial, dict) and 'csv' in self.initial:
                if set(self.initial) != {'csv'}:
                    raise Error('"initial" with a "csv" entry must have no other keys. Cannot continue')
            else:
                _check_harmonics(self.initial, '"initial"')

        self.isocheck = dict(data.get('isocheck', {}))
        self.isocheck.setdefault('m', default_isocheck_samples)
        self.perturbation = data.get('perturbation')
        if self.perturbation is not None:
            if not isinstance(self.perturbation, dict) or 'r0' not in self.perturbation:
                raise Error('"perturbation" must be a dictionary with at least "r0". Cannot continue')
            _check_harmonics(self.perturbation.get('g', {'cos': {'1': 1.0}}), '"perturbation"["g"]')
        self.circle = data.get('circle', {})


    def override(self, out=None, seed=None, n=None, tmax=None):
        '''Command-line values win over the file'''
        if out is not None:
            self.out = out
        if seed is not None:
            self.seed = seed
        if n is not None:
            self.n = n
        if tmax is not None:
            options = self.flow.to_dict()
            options['t_max'] = tmax
            try:
                self.flow = flow.FlowConfig(**options)
            except flow.ConfigError as err:
                raise Error(str(err))


    def initial_curve(self):
        '''Builds the configured initial curve. Any failure is a configuration error'''
        if self.initial is None:
            raise Error('Run configuration has no "initial" curve. Cannot continue')
        try:
            if isinstance(self.initial, (int, float)):
                return curve.RadialCurve.from_harmonics(self.warp, self.n, self.initial)
            elif 'csv' in self.initial:
                filename = self.initial['csv']
                if not os.path.isabs(filename):
                    filename = os.path.join(self.config_dir, filename)
                return curve.RadialCurve.from_csv(self.warp, filename)
            else:
                return curve.RadialCurve.from_harmonics(
                    self.warp,
                    self.n,
                    self.initial.get('r0', self.initial.get('mean', 0.0)),
                    cos=self.initial.get('cos'),
                    sin=self.initial.get('sin'),
                )
        except (curve.Error, warp.Error, common.Error) as err:
            raise Error('Bad initial curve: ' + str(err) + '. Cannot continue')


    def perturbation_g(self):
        '''Grid values of g for the perturbation task (default cos theta)'''
        g = self.perturbation.get('g', {'cos': {'1': 1.0}})
        return curve.harmonic_values(curve.grid(self.n), g.get('mean', 0.0), cos=g.get('cos'), sin=g.get('sin'))


    def to_dict(self):
        d = copy.deepcopy(self.data)
        d['warp'] = self.warp.to_spec()
        d['n'] = self.n
        d['seed'] = self.seed
        d['flow'] = self.flow.to_dict()
        if self.out is not None:
            d['out'] = self.out
        if isinstance(self.initial, dict) and 'csv' in self.initial:
            d['initial'] = {'csv': os.path.abspath(os.path.join(self.config_dir, self.initial['csv']))}
        return d


def load(filename):
    common.check_files_exist([filename])
    try:
        with open(filename) as f:
            data = json.load(f)
    except ValueError as err:
        raise Error('Error reading JSON config file ' + filename + ': ' + str(err) + '. Cannot continue')
    return RunConfig(data, config_dir=os.path.dirname(os.path.abspath(filename)))
