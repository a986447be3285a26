import unittest
import math
import os
import numpy as np
from warpflow import common, config, flow

modules_dir = os.path.dirname(os.path.abspath(config.__file__))
data_dir = os.path.join(modules_dir, 'tests', 'data')


class TestConfig(unittest.TestCase):
    def test_load(self):
        '''test load'''
        run_config = config.load(os.path.join(data_dir, 'config_test_flow.json'))
        self.assertEqual(run_config.warp.family, 'euclidean')
        self.assertEqual(run_config.n, 64)
        self.assertEqual(run_config.seed, 7)
        self.assertEqual(run_config.out, 'tmp.config_test_out')
        self.assertEqual(run_config.flow.t_max, 20.0)
        self.assertEqual(run_config.flow.sample_every, 100)
        self.assertEqual(run_config.flow.safety, 0.5)
        self.assertEqual(run_config.isocheck, {'m': config.default_isocheck_samples})
        self.assertEqual(run_config.config_dir, data_dir)


    def test_load_errors(self):
        '''test load raises errors'''
        with self.assertRaises(common.Error):
            config.load('thisisnotafileandshouldcauseanerror.json')
        with self.assertRaises(config.Error):
            config.load(os.path.join(data_dir, 'config_test_not_json.json'))
        with self.assertRaises(config.Error):
            config.load(os.path.join(data_dir, 'config_test_bad_key.json'))


    def test_init_defaults(self):
        '''test init defaults'''
        run_config = config.RunConfig({'warp': {'family': 'sphere'}})
        self.assertEqual(run_config.n, config.default_n)
        self.assertEqual(run_config.seed, config.default_seed)
        self.assertIsNone(run_config.out)
        self.assertIsNone(run_config.initial)
        self.assertIsNone(run_config.perturbation)
        self.assertEqual(run_config.circle, {})
        self.assertEqual(run_config.flow.to_dict(), flow.FlowConfig().to_dict())


    def test_init_errors(self):
        '''test init raises Error'''
        bad = [
            [1, 2],
            {'initial': 1.0},
            {'warp': {'family': 'torus'}},
            {'warp': {'family': 'euclidean'}, 'n': 'many'},
            {'warp': {'family': 'euclidean'}, 'flow': [1]},
            {'warp': {'family': 'euclidean'}, 'flow': {'safety': 2.0}},
            {'warp': {'family': 'euclidean'}, 'flow': {'not_an_option': 1}},
            {'warp': {'family': 'euclidean'}, 'initial': 'round'},
            {'warp': {'family': 'euclidean'}, 'initial': {'r0': 1.0, 'tan': {'1': 0.1}}},
            {'warp': {'family': 'euclidean'}, 'initial': {'r0': 1.0, 'cos': {'x': 0.1}}},
            {'warp': {'family': 'euclidean'}, 'initial': {'csv': 'x.csv', 'r0': 1.0}},
            {'warp': {'family': 'euclidean'}, 'perturbation': {'g': {'cos': {'1': 1.0}}}},
        ]
        for data in bad:
            with self.assertRaises(config.Error):
                config.RunConfig(data)


    def test_override(self):
        '''test override'''
        run_config = config.load(os.path.join(data_dir, 'config_test_flow.json'))
        run_config.override(out='tmp.other', seed=3, n=128, tmax=5.0)
        self.assertEqual((run_config.out, run_config.seed, run_config.n), ('tmp.other', 3, 128))
        self.assertEqual(run_config.flow.t_max, 5.0)
        self.assertEqual(run_config.flow.sample_every, 100)
        run_config.override()
        self.assertEqual(run_config.n, 128)
        with self.assertRaises(config.Error):
            run_config.override(tmax=-1.0)


    def test_initial_curve(self):
        '''test initial_curve from harmonics and from a number'''
        run_config = config.load(os.path.join(data_dir, 'config_test_flow.json'))
        c = run_config.initial_curve()
        self.assertEqual(c.n, 64)
        self.assertTrue(np.allclose(c.rho, 1 + 0.3 * np.cos(2 * c.theta), rtol=0, atol=1e-15))

        run_config = config.RunConfig({'warp': {'family': 'sphere'}, 'initial': 1.2, 'n': 32})
        self.assertEqual(list(run_config.initial_curve().rho), [1.2] * 32)


    def test_initial_curve_csv(self):
        '''test initial_curve from a csv file'''
        run_config = config.load(os.path.join(data_dir, 'config_test_csv.json'))
        c = run_config.initial_curve()
        self.assertEqual(c.n, 64)
        self.assertTrue(np.allclose(c.rho, 1 + 0.1 * np.cos(c.theta), rtol=0, atol=1e-12))
        d = run_config.to_dict()
        self.assertEqual(d['initial'], {'csv': os.path.join(data_dir, 'config_test_curve.csv')})


    def test_initial_curve_errors(self):
        '''test initial_curve raises Error'''
        with self.assertRaises(config.Error):
            config.RunConfig({'warp': {'family': 'euclidean'}}).initial_curve()
        with self.assertRaises(config.Error):
            config.RunConfig({'warp': {'family': 'euclidean'}, 'initial': 1.0, 'n': 100}).initial_curve()
        with self.assertRaises(config.Error):
            config.RunConfig({'warp': {'family': 'sphere'}, 'initial': 4.0}).initial_curve()
        with self.assertRaises(config.Error):
            config.RunConfig({'warp': {'family': 'euclidean'}, 'initial': {'csv': 'notafile.csv'}}).initial_curve()


    def test_perturbation_g(self):
        '''test perturbation_g'''
        run_config = config.RunConfig({'warp': {'family': 'euclidean'}, 'n': 32, 'perturbation': {'r0': 1.0}})
        theta = 2 * math.pi * np.arange(32) / 32
        self.assertTrue(np.allclose(run_config.perturbation_g(), np.cos(theta), rtol=0, atol=1e-15))
        run_config = config.RunConfig({'warp': {'family': 'euclidean'}, 'n': 32, 'perturbation': {'r0': 1.0, 'g': {'mean': 0.5, 'sin': {'2': 1.0}}}})
        self.assertTrue(np.allclose(run_config.perturbation_g(), 0.5 + np.sin(2 * theta), rtol=0, atol=1e-15))


    def test_to_dict(self):
        '''test to_dict'''
        run_config = config.load(os.path.join(data_dir, 'config_test_flow.json'))
        run_config.override(seed=9)
        d = run_config.to_dict()
        self.assertEqual(d['seed'], 9)
        self.assertEqual(d['n'], 64)
        self.assertEqual(d['warp']['family'], 'euclidean')
        self.assertEqual(d['flow']['t_max'], 20.0)
        self.assertEqual(d['initial'], {'r0': 1.0, 'cos': {'2': 0.3}})
        again = config.RunConfig(d)
        self.assertEqual(again.to_dict(), d)
