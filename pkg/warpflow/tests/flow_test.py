import unittest
import math
import os
import numpy as np
from warpflow import curve, flow, spaceform, symmetry, warp

modules_dir = os.path.dirname(os.path.abspath(flow.__file__))
data_dir = os.path.join(modules_dir, 'tests', 'data')


def ellipse_like(n=64):
    return curve.RadialCurve.from_function(warp.WarpPotential('euclidean'), n, lambda t: 1 + 0.3 * np.cos(2 * t))


def spike(n=64):
    rho = np.ones(n)
    rho[0] = 1.1
    return curve.RadialCurve(warp.WarpPotential('euclidean'), rho)


class TestFlowConfig(unittest.TestCase):
    def test_init(self):
        '''test init'''
        config = flow.FlowConfig()
        self.assertEqual(config.to_dict(), {'safety': 0.5, 't_max': 50.0, 'osc_tol': 1e-8, 'sample_every': 100, 'enforce_bounds': True})


    def test_init_errors(self):
        '''test init raises ConfigError'''
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(safety=0)
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(safety=1.5)
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(osc_tol=-1)
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(t_max=0)
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(sample_every=0)
        with self.assertRaises(flow.ConfigError):
            flow.FlowConfig(t_max='soon')


class TestFlow(unittest.TestCase):
    def test_stable_dt(self):
        '''test stable_dt'''
        w = warp.WarpPotential('euclidean')
        self.assertAlmostEqual(flow.stable_dt(curve.RadialCurve(w, np.ones(64)), 0.5), 0.5 / 1024, places=15)
        self.assertAlmostEqual(flow.stable_dt(curve.RadialCurve(w, np.ones(128)), 0.5), 0.5 / 4096, places=15)
        w = warp.WarpPotential('cylinder', c=2.0)
        self.assertAlmostEqual(flow.stable_dt(curve.RadialCurve(w, np.full(64, 1.0)), 0.5), 0.5 / (0.5 * 1024), places=15)


    def test_rhs_slice(self):
        '''test rhs vanishes on slices'''
        for w, r0 in [(warp.WarpPotential('sphere'), 1.0), (warp.WarpPotential('scaled_sinh', A=math.sqrt(2)), 1.0)]:
            got = flow.rhs(curve.RadialCurve(w, np.full(64, r0)))
            self.assertEqual(list(got), [0.0] * 64)


    def test_rhs(self):
        '''test rhs against the flow equation evaluated term by term'''
        r = np.linspace(0.5, 3.0, 60)
        curves = [
            ellipse_like(),
            curve.RadialCurve.from_function(warp.WarpPotential('sphere'), 64, lambda t: 1.2 + 0.2 * np.cos(3 * t) + 0.1 * np.sin(t)),
            curve.RadialCurve.from_function(warp.WarpPotential('cylinder', c=2.0), 64, lambda t: 1 + 0.2 * np.sin(2 * t)),
            curve.RadialCurve.from_function(warp.WarpPotential('tabulated', r=r, phi=r), 64, lambda t: 1.5 + 0.2 * np.cos(t)),
        ]
        for c in curves:
            phi, dphi, ddphi, beta = c.warp.eval(c.rho)
            rho_theta, rho_thetatheta = c.differentiate()
            expected = (phi ** 3 * rho_thetatheta + dphi * rho_theta ** 4) / (phi * (phi ** 2 + rho_theta ** 2) ** 1.5)
            self.assertTrue(np.allclose(flow.rhs(c), expected, rtol=0, atol=1e-12), msg=c.warp.describe())


    def test_step_slice(self):
        '''test step leaves slices unchanged'''
        c = curve.RadialCurve(warp.WarpPotential('hyperbolic'), np.full(64, 0.8))
        got = flow.step(c, flow.stable_dt(c, 0.5))
        self.assertTrue(np.array_equal(c.rho, got.rho))


    def test_step_smooths(self):
        '''test step decreases oscillation'''
        c = ellipse_like()
        got = flow.step(c, flow.stable_dt(c, 0.5))
        self.assertLess(got.osc, c.osc)


    def test_step_bounds(self):
        '''test step raises BoundsViolation'''
        c = spike()
        with self.assertRaises(flow.BoundsViolation):
            flow.step(c, flow.stable_dt(c, 0.5), bounds=(1.0, 1.1))


    def test_step_order(self):
        '''test step is fourth order in time'''
        c = curve.RadialCurve.from_function(warp.WarpPotential('euclidean'), 32, lambda t: 1 + 0.1 * np.cos(2 * t) + 0.05 * np.cos(10 * t))
        dt = flow.stable_dt(c, 1.0)

        reference = c
        for i in range(8):
            reference = flow.step(reference, dt / 8)

        one_step = flow.step(c, dt)
        two_steps = flow.step(flow.step(c, dt / 2), dt / 2)
        error_dt = np.max(np.abs(one_step.rho - reference.rho))
        error_half_dt = np.max(np.abs(two_steps.rho - reference.rho))
        self.assertGreater(error_dt / error_half_dt, 10)
        self.assertLess(error_dt / error_half_dt, 30)


    def test_evolve_slice(self):
        '''test evolve from a slice'''
        c = curve.RadialCurve(warp.WarpPotential('sphere'), np.full(64, 1.2))
        trace = flow.evolve(c, flow.FlowConfig())
        self.assertEqual(len(trace), 1)
        self.assertEqual(trace.termination, 'converged')
        self.assertEqual(trace.steps, 0)
        self.assertIs(trace.final_curve, c)


    def test_evolve_euclidean(self):
        '''test evolve converges to the area-preserving slice in the plane'''
        c = ellipse_like()
        trace = flow.evolve(c, flow.FlowConfig(t_max=20.0))
        self.assertEqual(trace.termination, 'converged')
        self.assertLess(trace.final_curve.osc, 1e-8)
        self.assertLess(trace.max_area_drift(), 1e-7)
        self.assertAlmostEqual(float(np.mean(trace.final_curve.rho)), math.sqrt(1.045), delta=1e-4)
        summary = trace.summary()
        self.assertAlmostEqual(summary['predicted_radius'], math.sqrt(1.045), places=12)
        self.assertAlmostEqual(summary['final_radius'], summary['predicted_radius'], delta=1e-4)
        self.assertEqual(summary['steps'], trace.steps)
        self.assertTrue(summary['L_monotone'])

        t = trace.column('t')
        self.assertTrue(np.all(np.diff(t) > 0))
        self.assertTrue(trace.length_monotone())
        self.assertTrue(trace.bounds_hold())
        self.assertTrue(trace.omega_nonincreasing())
        self.assertTrue(trace.lambda_decay_holds())


    def test_evolve_euclidean_fine_grid(self):
        '''test evolve at n=256 conserves area and converges with decaying Lambda'''
        trace = flow.evolve(ellipse_like(n=256), flow.FlowConfig(t_max=50.0))
        self.assertEqual(trace.termination, 'converged')
        self.assertLess(trace.max_area_drift(), 1e-7)
        self.assertLess(abs(float(np.mean(trace.final_curve.rho)) - math.sqrt(1.045)), 1e-4)
        self.assertTrue(trace.lambda_decay_holds())
        self.assertTrue(trace.omega_nonincreasing())
        self.assertTrue(trace.length_monotone())
        self.assertTrue(trace.bounds_hold())
        self.assertEqual(len(trace.extremes), len(trace))


    def test_evolve_sphere(self):
        '''test evolve converges to the area-preserving slice on the sphere'''
        c = curve.RadialCurve.from_function(warp.WarpPotential('sphere'), 64, lambda t: math.pi / 2 + 0.2 * np.cos(3 * t))
        A0 = c.area()
        trace = flow.evolve(c, flow.FlowConfig(t_max=20.0))
        self.assertEqual(trace.termination, 'converged')
        expected = c.warp.radius_of_area(A0)
        self.assertAlmostEqual(2 * math.pi * (1 - math.cos(expected)), A0, places=12)
        self.assertAlmostEqual(float(np.mean(trace.final_curve.rho)), expected, delta=1e-4)
        self.assertTrue(trace.omega_nonincreasing())
        with self.assertRaises(flow.Error):
            trace.lambda_decay_holds()


    def test_evolve_horizon(self):
        '''test evolve stops at t_max'''
        trace = flow.evolve(ellipse_like(), flow.FlowConfig(t_max=0.05, sample_every=10))
        self.assertEqual(trace.termination, 'horizon')
        self.assertEqual(trace.rows[-1][0], 0.05)
        self.assertGreater(len(trace), 2)
        self.assertEqual(trace.extremes[-1], (float(np.min(trace.final_curve.rho)), float(np.max(trace.final_curve.rho))))
        with self.assertRaises(flow.Error):
            trace.symmetry_preserved()


    def test_evolve_bounds_violation(self):
        '''test evolve on a spike hits the bounds check'''
        with self.assertRaises(flow.BoundsViolation):
            flow.evolve(spike(), flow.FlowConfig(t_max=1.0))

        trace = flow.evolve(spike(), flow.FlowConfig(t_max=1.0), raise_error=False)
        self.assertEqual(trace.termination, 'error')
        self.assertIsInstance(trace.error, flow.BoundsViolation)
        self.assertEqual(trace.summary()['termination'], 'error')


    def test_length_rate_consistency(self):
        '''test finite-difference dL/dt against dLdt_formula'''
        trace = flow.evolve(ellipse_like(), flow.FlowConfig(t_max=0.2, sample_every=10))
        self.assertGreater(len(trace), 21)
        self.assertLess(trace.length_rate_consistency(count=20), 1e-3)


    def test_dLdt_formula(self):
        '''test dLdt_formula'''
        c = curve.RadialCurve(warp.WarpPotential('euclidean'), np.full(64, 2.0))
        self.assertEqual(flow.dLdt_formula(c), (0.0, 0.0))

        c = curve.RadialCurve.from_function(warp.WarpPotential('euclidean'), 256, lambda t: 1 + 0.2 * np.cos(2 * t) + 0.1 * np.sin(3 * t))
        theta_form, arc_form = flow.dLdt_formula(c)
        self.assertLess(theta_form, 0)
        self.assertAlmostEqual(theta_form, arc_form, delta=1e-8)

        c = curve.RadialCurve.from_function(warp.WarpPotential('hyperbolic'), 256, lambda t: 1 + 0.2 * np.cos(2 * t))
        theta_form, arc_form = flow.dLdt_formula(c)
        self.assertAlmostEqual(theta_form, arc_form, delta=1e-8)


    def test_dLdt_formula_translated_circle(self):
        '''test dLdt_formula vanishes on a translated circle'''
        c = spaceform.euclidean_circle(0.3, 0.0, 1.0, 256)
        theta_form, arc_form = flow.dLdt_formula(c)
        self.assertAlmostEqual(theta_form, 0.0, delta=1e-8)
        self.assertAlmostEqual(arc_form, 0.0, delta=1e-8)


    def test_symmetric_monotone(self):
        '''test length monotonicity and symmetry preservation for symmetric curves when beta in [0, 1]'''
        rng = np.random.default_rng(5)
        warps = [
            (warp.WarpPotential('euclidean'), 1.0),
            (warp.WarpPotential('cylinder', c=1.0), 1.0),
            (warp.WarpPotential('scaled_sinh', A=1.0, k=1 / math.sqrt(2)), 2.0),
        ]
        for w, centre in warps:
            for i in range(20):
                coeffs = rng.uniform(-1, 1, size=4)
                coeffs *= 0.25 / np.sum(np.abs(coeffs))
                c = curve.RadialCurve.from_harmonics(w, 64, centre, cos={k + 1: x for k, x in enumerate(coeffs)})
                self.assertLess(symmetry.symmetry_defect(c, 0.0), 1e-12)
                trace = flow.evolve(c, flow.FlowConfig(t_max=3.0, sample_every=50), symmetry_axis=0.0)
                self.assertTrue(trace.length_monotone(), msg=w.describe() + ' curve ' + str(i))
                self.assertTrue(trace.bounds_hold())
                self.assertTrue(trace.symmetry_preserved())
                self.assertLess(trace.column('L')[-1], trace.column('L')[0])


    def test_write_csv(self):
        '''test FlowTrace write_csv'''
        trace = flow.evolve(ellipse_like(), flow.FlowConfig(t_max=0.01, sample_every=5))
        tmp_file = 'tmp.flow_test_trace.csv'
        trace.write_csv(tmp_file)
        with open(tmp_file) as f:
            lines = f.read().rstrip().split('\n')
        self.assertEqual(lines[0], 't,L,A,osc,max_omega,dLdt_formula,lambda')
        self.assertEqual(len(lines), len(trace) + 1)
        self.assertEqual(lines[1].split(',')[0], '0.0')
        os.unlink(tmp_file)


    def test_gradient_barrier(self):
        '''test gradient_barrier'''
        got = flow.gradient_barrier(1.0, 1.0, 0.0, [1.0, 10.0])
        self.assertAlmostEqual(got[0], 3 ** -0.5, delta=1e-8)
        self.assertAlmostEqual(got[1], 21 ** -0.5, delta=1e-8)

        got = flow.gradient_barrier(0.5, 2.0, 0.0, [3.0])
        self.assertAlmostEqual(got[0], (1 / 0.25 + 2 * 2.0 * 3.0) ** -0.5, delta=1e-8)

        self.assertEqual(list(flow.gradient_barrier(0.0, 1.0, 1.0, [0.0, 1.0])), [0.0, 0.0])

        t = np.linspace(0, 5, 11)
        got = flow.gradient_barrier(2.0, 1.0, 1.0, t)
        self.assertEqual(got[0], 2.0)
        self.assertTrue(np.all(np.diff(got) < 0))
        self.assertTrue(np.all(got[1:] * np.sqrt(t[1:]) <= 1 / math.sqrt(2) + 1e-9))

        with self.assertRaises(flow.Error):
            flow.gradient_barrier(-1.0, 1.0, 1.0, [1.0])
        with self.assertRaises(flow.Error):
            flow.gradient_barrier(1.0, 1.0, 1.0, [2.0, 1.0])
