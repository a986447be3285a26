import functools
import math
import sys
import numpy as np
from warpflow import common, curve, symmetry, warp

class Error (Exception): pass
class BoundsViolation (Error): pass
class ConfigError (Error): pass


trace_header = ['t', 'L', 'A', 'osc', 'max_omega', 'dLdt_formula', 'lambda']


class FlowConfig:
    def __init__(self,
        safety=0.5,
        t_max=50.0,
        osc_tol=1e-8,
        sample_every=100,
        enforce_bounds=True,
        verbose=False,
    ):
        try:
            self.safety = float(safety)
            self.t_max = float(t_max)
            self.osc_tol = float(osc_tol)
            self.sample_every = int(sample_every)
        except (TypeError, ValueError):
            raise ConfigError('Non-numeric flow option. Cannot continue')

        self.enforce_bounds = bool(enforce_bounds)
        self.verbose = verbose

        if not 0 < self.safety <= 1:
            raise ConfigError('safety must be in (0, 1], got ' + str(self.safety))
        if not self.osc_tol > 0:
            raise ConfigError('osc_tol must be positive, got ' + str(self.osc_tol))
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigError('t_max must be positive and finite, got ' + str(self.t_max))
        if self.sample_every < 1:
            raise ConfigError('sample_every must be at least 1, got ' + str(self.sample_every))


    def to_dict(self):
        return {
            'safety': self.safety,
            't_max': self.t_max,
            'osc_tol': self.osc_tol,
            'sample_every': self.sample_every,
            'enforce_bounds': self.enforce_bounds,
        }


@functools.lru_cache(maxsize=None)
def _derivative_operator(n):
    '''Rows (i k, -k^2) acting on rfft coefficients; the Nyquist mode is
       dropped from the first derivative'''
    k = np.fft.rfftfreq(n, d=1.0 / n)
    ik = 1j * k
    if n % 2 == 0:
        ik[-1] = 0
    return np.stack((ik, -k * k + 0j))


def _rho_derivatives(rho):
    '''(rho_theta, rho_thetatheta) from one forward and one inverse real FFT'''
    n = len(rho)
    if rho[0] == rho[-1] and np.all(rho == rho[0]):
        zeros = np.zeros(n)
        return zeros, zeros
    return np.fft.irfft(np.fft.rfft(rho) * _derivative_operator(n), n=n)


def _velocity(warp_potential, rho):
    '''Returns (rho_t, phi, diffusion coefficient phi^2 / (phi^2 + rho_theta^2)^(3/2))
       with no domain or floor checks'''
    phi, dphi = warp_potential.phi_dphi(rho)
    rho_theta, rho_thetatheta = _rho_derivatives(rho)
    phi2 = phi * phi
    rho_theta2 = rho_theta * rho_theta
    q = phi2 + rho_theta2
    q32 = q * np.sqrt(q)
    rho_t = (phi2 * rho_thetatheta + dphi * rho_theta2 * rho_theta2 / phi) / q32
    return rho_t, phi, phi2 / q32


def _dt(diffusion, n, safety):
    return safety / (float(np.max(diffusion)) * (n / 2) ** 2)


def _rk4(warp_potential, rho, dt, k1):
    k2 = _velocity(warp_potential, rho + 0.5 * dt * k1)[0]
    k3 = _velocity(warp_potential, rho + 0.5 * dt * k2)[0]
    k4 = _velocity(warp_potential, rho + dt * k3)[0]
    return rho + (dt / 6) * (k1 + 2 * (k2 + k3) + k4)


def _check_radii(warp_potential, rho, bounds):
    '''Bounds and domain check of new radii, once per step. Returns (min, max)'''
    low, high = float(np.min(rho)), float(np.max(rho))
    if bounds is not None and (low < bounds[0] or high > bounds[1]):
        raise BoundsViolation('Radius left the maximum-principle bounds [' + str(bounds[0]) + ', ' + str(bounds[1]) + ']: min=' + str(low) + ', max=' + str(high) + '. Cannot continue')
    if not (warp_potential.r_min < low and high < warp_potential.r_max):
        warp_potential.check_domain(rho)
    return low, high


def _first_stage(warp_potential, rho):
    k1, phi, diffusion = _velocity(warp_potential, rho)
    warp_potential.check_floor(phi)
    return k1, diffusion


def rhs(c):
    '''rho_t of the radial-graph flow, at each node of curve c'''
    return _first_stage(c.warp, c.rho)[0]


def stable_dt(c, safety):
    return _dt(_first_stage(c.warp, c.rho)[1], c.n, safety)


def step(c, dt, bounds=None):
    '''One classical Runge-Kutta step. bounds = (low, high) raises
       BoundsViolation if the new radii leave [low, high]'''
    k1 = _first_stage(c.warp, c.rho)[0]
    new_rho = _rk4(c.warp, c.rho, dt, k1)
    _check_radii(c.warp, new_rho, bounds)
    return c.with_rho(new_rho)


def dLdt_formula(c):
    '''Returns (int beta*b^2 - b_theta^2 dtheta, int kappa*Phi_ss ds)'''
    g = c.geometry()
    beta = c.warp.eval(c.rho)[3]
    theta_form = curve.trapezoid(beta * g.b * g.b - g.b_theta * g.b_theta)
    arc_form = curve.trapezoid(g.kappa * g.phi_ss * g.s_theta)
    return theta_form, arc_form


class FlowTrace:
    def __init__(self, initial_curve, config, symmetry_axis=None):
        self.initial_curve = initial_curve
        self.final_curve = initial_curve
        self.config = config
        self.rows = []
        self.extremes = []
        self.symmetry_axis = symmetry_axis
        self.symmetry_defects = []
        self.steps = 0
        self.termination = None
        self.error = None
        rho = initial_curve.rho
        self.bounds = (float(np.min(rho)) - 10 * config.osc_tol, float(np.max(rho)) + 10 * config.osc_tol)


    def __len__(self):
        return len(self.rows)


    def add_sample(self, t, c):
        f = c.functionals()
        omega = curve.spectral_derivative(c.rho) ** 2
        self.rows.append((t, f.L, f.A, f.osc, float(np.max(omega)), dLdt_formula(c)[0], f.lambda_))
        self.extremes.append((float(np.min(c.rho)), float(np.max(c.rho))))
        if self.symmetry_axis is not None:
            self.symmetry_defects.append(symmetry.symmetry_defect(c, self.symmetry_axis))


    def column(self, name):
        i = trace_header.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)


    def max_area_drift(self):
        '''max_t |A(t) - A(0)| / |A(0)|'''
        A = self.column('A')
        return float(np.max(np.abs(A - A[0])) / abs(A[0]))


    def length_monotone(self, tolerance=1e-9):
        L = self.column('L')
        return bool(np.all(np.diff(L) <= tolerance * L[0]))


    def bounds_hold(self):
        low, high = self.bounds
        return all(lo >= low and hi <= high for lo, hi in self.extremes)


    def symmetry_preserved(self, tolerance=1e-9):
        if self.symmetry_axis is None:
            raise Error('No symmetry axis was monitored in this run')
        return max(self.symmetry_defects) < tolerance


    def omega_nonincreasing(self, tolerance=1e-12):
        omega = self.column('max_omega')
        return bool(np.all(np.diff(omega) <= tolerance * omega[0]))


    def lambda_decay_holds(self, tolerance=1e-6):
        '''Sampled check of dLambda/dt <= -(L/2A) Lambda, with A the planar
           area. Slopes are forward differences compared with the later sample.'''
        if self.initial_curve.warp.family != 'euclidean':
            raise Error('Lambda is only defined for the euclidean warp family')
        t, L, lam = self.column('t'), self.column('L'), self.column('lambda')
        planar_area = (L * L - lam) / (4 * math.pi)
        slack = tolerance * abs(lam[0])
        for i in range(len(t) - 1):
            slope = (lam[i + 1] - lam[i]) / (t[i + 1] - t[i])
            if slope > -L[i + 1] / (2 * planar_area[i + 1]) * lam[i + 1] + slack:
                return False
        return True


    def length_rate_consistency(self, count=20):
        '''Max relative difference between the central difference of L and
           dLdt_formula over the first count interior samples'''
        t, L, formula = self.column('t'), self.column('L'), self.column('dLdt_formula')
        errors = []
        for i in range(1, min(count + 1, len(t) - 1)):
            fd = (L[i + 1] - L[i - 1]) / (t[i + 1] - t[i - 1])
            errors.append(abs(fd - formula[i]) / abs(formula[i]))
        if len(errors) == 0:
            return None
        return max(errors)


    def write_csv(self, filename):
        common.write_csv(filename, trace_header, self.rows)


    def summary(self):
        A, L = self.column('A'), self.column('L')
        try:
            predicted = self.initial_curve.warp.radius_of_area(A[0])
        except warp.OutOfRange:
            predicted = None
        return {
            'A0': float(A[0]),
            'A_final': float(A[-1]),
            'L0': float(L[0]),
            'L_final': float(L[-1]),
            'final_radius': float(np.mean(self.final_curve.rho)),
            'predicted_radius': predicted,
            'max_area_drift': self.max_area_drift(),
            'L_monotone': self.length_monotone(),
            'termination': self.termination,
            'steps': self.steps,
        }


def evolve(c, config, raise_error=True, symmetry_axis=None):
    '''Runs the flow from curve c until osc < osc_tol or t reaches t_max.
       With raise_error=False, step failures end the run with
       termination "error" and the exception stored in trace.error.
       With symmetry_axis set, the symmetry defect about it is recorded
       at every sample.'''
    trace = FlowTrace(c, config, symmetry_axis=symmetry_axis)
    bounds = trace.bounds if config.enforce_bounds else None
    t = 0.0
    trace.add_sample(t, c)

    if c.osc < config.osc_tol:
        trace.termination = 'converged'
        return trace

    if config.verbose:
        print('{:_^79}'.format(' Running flow '), flush=True)
        print('Initial curve: n=', c.n, ', osc=', c.osc, ', warp=', c.warp.describe(), sep='')

    w, rho = c.warp, c.rho

    while True:
        try:
            k1, diffusion = _first_stage(w, rho)
            dt = _dt(diffusion, c.n, config.safety)
            last = config.t_max - t <= dt
            if last:
                dt = config.t_max - t
            new_rho = _rk4(w, rho, dt, k1)
            low, high = _check_radii(w, new_rho, bounds)
        except (Error, warp.Error) as err:
            trace.termination = 'error'
            trace.error = err
            trace.final_curve = c.with_rho(rho)
            if config.verbose:
                print('Flow stopped at t=', t, ' after ', trace.steps, ' steps: ', err, sep='', file=sys.stderr)
            if raise_error:
                raise
            return trace

        rho = new_rho
        t = config.t_max if last else t + dt
        trace.steps += 1
        converged = high - low < config.osc_tol

        if converged or last or trace.steps % config.sample_every == 0:
            c = c.with_rho(rho)
            trace.add_sample(t, c)
            if config.verbose:
                print('step', trace.steps, 't', t, 'L', trace.rows[-1][1], 'osc', c.osc, sep='\t', flush=True)

        if converged or last:
            trace.termination = 'converged' if converged else 'horizon'
            trace.final_curve = c
            break

    if config.verbose:
        print('Flow finished (', trace.termination, ') at t=', t, ' after ', trace.steps, ' steps', sep='')

    return trace


def gradient_barrier(v0, c1, c2, t_grid):
    '''Solves v_t = -c1 v^3 - c2 v^4, v(0) = v0 by Runge-Kutta and returns v at the
       (nondecreasing, nonnegative) times in t_grid'''
    if v0 < 0 or c1 < 0 or c2 < 0:
        raise Error('gradient_barrier needs v0, c1, c2 >= 0')
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid < 0) or np.any(np.diff(t_grid) < 0):
        raise Error('gradient_barrier needs nondecreasing, nonnegative times')

    values = np.zeros(len(t_grid))
    if v0 == 0:
        return values

    f = lambda v: -c1 * v ** 3 - c2 * v ** 4
    rate = 3 * c1 * v0 ** 2 + 4 * c2 * v0 ** 3
    h_max = min(1e-3, 0.1 / rate) if rate > 0 else 1e-3
    t, v = 0.0, float(v0)

    for i, target in enumerate(t_grid):
        substeps = int(math.ceil((target - t) / h_max))
        if substeps > 0:
            h = (target - t) / substeps
            for j in range(substeps):
                k1 = f(v)
                k2 = f(v + 0.5 * h * k1)
                k3 = f(v + 0.5 * h * k2)
                k4 = f(v + h * k3)
                v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            t = target
        values[i] = v

    return values
