import math
import collections
import numpy as np
from scipy import integrate, interpolate, optimize
from warpflow import common

class Error (Exception): pass
class OutOfDomain (Error): pass
class DegeneratePotential (Error): pass
class OutOfRange (Error): pass
class NotSpaceform (Error): pass
class InconsistentCurvature (Error): pass


default_outer_radius = 100.0
sphere_margin = 1e-3
sample_points = 257
family_beta_tolerance = 1e-12
spaceform_tolerance = 1e-8

family_parameters = {
    'euclidean': {'r0': 0.0},
    'sphere': {'k': 1.0, 'r0': 0.0},
    'hyperbolic': {'k': 1.0, 'r0': 0.0},
    'cylinder': {'c': 1.0},
    'scaled_sinh': {'A': 1.0, 'k': 1.0},
    'tabulated': {'r': None, 'phi': None, 'phi0': 0.0},
}

SpaceformClassification = collections.namedtuple('SpaceformClassification', ['curvature_sign', 'k', 'r0', 'gauss_curvature'])


def _scalar_or_array(x):
    if np.ndim(x) == 0:
        return float(x)
    return x


class WarpPotential:
    '''Warp potential phi(r) of the metric dr^2 + phi(r)^2 dtheta^2.
       Immutable after construction; all methods are pure.'''
    def __init__(self, family, domain=None, phi_floor=1e-8, **params):
        if family not in common.allowed_families:
            raise Error('Warp family "' + str(family) + '" not recognised. Must be one of: ' + ', '.join(common.allowed_families))

        unknown = set(params) - set(family_parameters[family])
        if len(unknown):
            raise Error('Unknown parameter(s) for warp family ' + family + ': ' + ', '.join(sorted(unknown)))

        self.family = family
        self.params = dict(family_parameters[family])
        self.params.update(params)
        self.phi_floor = float(phi_floor)
        self._spline = None

        if family == 'tabulated':
            self._init_tabulated()

        for name in ('k', 'c', 'A'):
            if name in self.params and not self.params[name] > 0:
                raise Error('Parameter ' + name + ' must be positive, got ' + str(self.params[name]))

        if domain is None:
            domain = self._default_domain()
        self.r_min, self.r_max = float(domain[0]), float(domain[1])
        if not (math.isfinite(self.r_min) and math.isfinite(self.r_max) and self.r_min < self.r_max):
            raise Error('Bad warp domain ' + str(tuple(domain)) + '. Need finite r_min < r_max')
        if family == 'tabulated' and (self.r_min < self.params['r'][0] or self.r_max > self.params['r'][-1]):
            raise Error('Tabulated warp domain must lie inside the tabulated grid')

        self.expected_beta = self._expected_beta()
        self._check_sample_grid()


    def _init_tabulated(self):
        if self.params['r'] is None or self.params['phi'] is None:
            raise Error('Tabulated warp potential needs both "r" and "phi" arrays')
        r = np.asarray(self.params['r'], dtype=float)
        phi = np.asarray(self.params['phi'], dtype=float)
        if r.ndim != 1 or r.shape != phi.shape or len(r) < 4:
            raise Error('Tabulated warp potential needs matching 1-d "r" and "phi" arrays of length at least 4')
        if np.any(np.diff(r) <= 0):
            raise Error('Tabulated radii must be strictly increasing')
        self.params['r'] = r
        self.params['phi'] = phi
        self._spline = interpolate.CubicSpline(r, phi)


    def _default_domain(self):
        p = self.params
        if self.family == 'sphere':
            return p['r0'] + sphere_margin, p['r0'] + math.pi / p['k'] - sphere_margin
        elif self.family in {'euclidean', 'hyperbolic'}:
            return p['r0'], p['r0'] + default_outer_radius
        elif self.family == 'tabulated':
            return p['r'][0], p['r'][-1]
        else:
            return 0.0, default_outer_radius


    def _expected_beta(self):
        if self.family in {'euclidean', 'sphere', 'hyperbolic'}:
            return 1.0
        elif self.family == 'cylinder':
            return 0.0
        elif self.family == 'scaled_sinh':
            return (self.params['A'] * self.params['k']) ** 2
        return None


    def sample_grid(self, interval=None, points=sample_points):
        '''Interior points of the open interval (default: the whole domain)'''
        r1, r2 = (self.r_min, self.r_max) if interval is None else interval
        return np.linspace(r1, r2, points + 2)[1:-1]


    def _check_sample_grid(self):
        r = self.sample_grid()
        phi, dphi, ddphi = self._derivatives(r)
        if not np.all(phi > 0):
            raise Error('Warp potential ' + self.describe() + ' is not positive on its domain. Cannot continue')

        if self.expected_beta is not None:
            beta = dphi * dphi - phi * ddphi
            scale = np.maximum(1.0, np.maximum(dphi * dphi, np.abs(phi * ddphi)))
            if np.any(np.abs(beta - self.expected_beta) > family_beta_tolerance * scale):
                raise Error('Warp potential ' + self.describe() + ' does not have beta == ' + str(self.expected_beta))


    def _derivatives(self, r):
        p = self.params
        r = np.asarray(r, dtype=float)
        if self.family == 'euclidean':
            return r - p['r0'], 1.0, np.zeros_like(r)
        elif self.family == 'sphere':
            k, x = p['k'], p['k'] * (r - p['r0'])
            return np.sin(x) / k, np.cos(x), -k * np.sin(x)
        elif self.family == 'hyperbolic':
            k, x = p['k'], p['k'] * (r - p['r0'])
            return np.sinh(x) / k, np.cosh(x), k * np.sinh(x)
        elif self.family == 'cylinder':
            return np.full_like(r, p['c']), np.zeros_like(r), np.zeros_like(r)
        elif self.family == 'scaled_sinh':
            A, k = p['A'], p['k']
            return A * np.sinh(k * r), A * k * np.cosh(k * r), A * k * k * np.sinh(k * r)
        else:
            return self._spline(r), self._spline(r, 1), self._spline(r, 2)


    def phi_dphi(self, r):
        '''(phi, dphi) at r with no domain or floor checks, for the flow stages.
           dphi is a plain float for the euclidean and cylinder families.'''
        p = self.params
        if self.family == 'euclidean':
            return r - p['r0'], 1.0
        elif self.family == 'sphere':
            x = p['k'] * (r - p['r0'])
            return np.sin(x) / p['k'], np.cos(x)
        elif self.family == 'hyperbolic':
            x = p['k'] * (r - p['r0'])
            return np.sinh(x) / p['k'], np.cosh(x)
        elif self.family == 'cylinder':
            return np.full_like(r, p['c']), 0.0
        elif self.family == 'scaled_sinh':
            x = p['k'] * r
            return p['A'] * np.sinh(x), p['A'] * p['k'] * np.cosh(x)
        else:
            return self._spline(r), self._spline(r, 1)


    def check_floor(self, phi):
        if np.min(phi) < self.phi_floor:
            raise DegeneratePotential('phi=' + str(np.min(phi)) + ' below floor ' + str(self.phi_floor) + ' for ' + self.describe())


    def in_domain(self, r):
        r = np.asarray(r, dtype=float)
        return bool(np.all((r > self.r_min) & (r < self.r_max)))


    def check_domain(self, r, closed=False):
        r = np.asarray(r, dtype=float)
        if closed:
            ok = np.all((r >= self.r_min) & (r <= self.r_max))
        else:
            ok = np.all((r > self.r_min) & (r < self.r_max))
        if not ok:
            raise OutOfDomain('Radius outside warp domain (' + str(self.r_min) + ', ' + str(self.r_max) + '): min=' + str(np.min(r)) + ', max=' + str(np.max(r)))


    def eval(self, r):
        '''Returns (phi, dphi, ddphi, beta) at r, where beta = dphi^2 - phi*ddphi'''
        self.check_domain(r)
        phi, dphi, ddphi = self._derivatives(r)
        self.check_floor(phi)
        beta = dphi * dphi - phi * ddphi
        return tuple(_scalar_or_array(x) for x in (phi, dphi, ddphi, beta))


    def beta(self, r):
        return self.eval(r)[3]


    def gauss_curvature(self, r):
        phi, dphi, ddphi, beta = self.eval(r)
        return _scalar_or_array(-np.asarray(ddphi) / np.asarray(phi))


    def beta_range(self, interval=None):
        '''(min, max) of beta over a sample grid of the interval'''
        beta = np.asarray(self.eval(self.sample_grid(interval))[3])
        return float(beta.min()), float(beta.max())


    def big_phi(self, r):
        '''Area-density antiderivative Phi(r) = int_0^r phi'''
        r_array = np.asarray(r, dtype=float)
        self.check_domain(r_array, closed=True)
        if np.any(r_array < 0):
            raise OutOfDomain('big_phi needs r >= 0')

        p = self.params
        if self.family == 'euclidean':
            out = 0.5 * r_array * r_array - p['r0'] * r_array
        elif self.family == 'sphere':
            k = p['k']
            out = (math.cos(k * p['r0']) - np.cos(k * (r_array - p['r0']))) / (k * k)
        elif self.family == 'hyperbolic':
            k = p['k']
            out = (np.cosh(k * (r_array - p['r0'])) - math.cosh(k * p['r0'])) / (k * k)
        elif self.family == 'cylinder':
            out = p['c'] * r_array
        elif self.family == 'scaled_sinh':
            out = p['A'] * (np.cosh(p['k'] * r_array) - 1) / p['k']
        else:
            # Phi is measured from the first tabulated radius
            r_start = p['r'][0]
            quad = lambda x: integrate.quad(self._spline, r_start, x, epsabs=1e-12, epsrel=1e-12, limit=200)[0]
            out = p['phi0'] + np.vectorize(quad, otypes=[float])(r_array)

        return _scalar_or_array(out)


    def area_range(self):
        return 2 * math.pi * self.big_phi(self.r_min), 2 * math.pi * self.big_phi(self.r_max)


    def radius_of_area(self, area):
        '''Returns r with 2*pi*Phi(r) = area'''
        area = float(area)
        a_min, a_max = self.area_range()
        if not a_min < area < a_max:
            raise OutOfRange('Area ' + str(area) + ' not attainable by a slice in domain. Need ' + str(a_min) + ' < A < ' + str(a_max))

        residual = lambda r: 2 * math.pi * self.big_phi(r) - area
        r = optimize.brentq(residual, self.r_min, self.r_max, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)

        for i in range(5):
            res = residual(r)
            if abs(res) <= 1e-12 * abs(area):
                break
            phi = float(self._derivatives(r)[0])
            r_new = r - res / (2 * math.pi * phi)
            if not self.r_min <= r_new <= self.r_max:
                break
            r = r_new

        return r


    def iso_profile(self, area):
        '''F(A): squared length of the slice enclosing area A'''
        r = self.radius_of_area(area)
        phi = float(self._derivatives(r)[0])
        return (2 * math.pi * phi) ** 2


    def classify_spaceform(self, interval=None):
        '''Identifies a beta == 1 region as a piece of R^2, S^2 or H^2 (scaled by k)'''
        r = self.sample_grid(interval, points=129)
        phi, dphi, ddphi, beta = (np.asarray(x) for x in self.eval(r))

        if np.max(np.abs(beta - 1)) > spaceform_tolerance:
            raise NotSpaceform('beta deviates from 1 by ' + str(np.max(np.abs(beta - 1))) + ' on interval. Not a space form')

        K = -ddphi / phi
        if np.ptp(K) > spaceform_tolerance * max(1.0, np.max(np.abs(K))):
            raise InconsistentCurvature('Gauss curvature varies from ' + str(K.min()) + ' to ' + str(K.max()))

        gauss = float(np.mean(K))
        r1, phi1, dphi1 = r[0], phi[0], dphi[0]

        if abs(gauss) <= spaceform_tolerance:
            sign, k = 'zero', None
            template = lambda x: x
            dtemplate = lambda x: np.ones_like(x)
            x1 = phi1
        elif gauss > 0:
            sign, k = 'positive', math.sqrt(gauss)
            template = lambda x: np.sin(k * x) / k
            dtemplate = lambda x: np.cos(k * x)
            x1 = math.atan2(k * phi1, dphi1) / k
        else:
            sign, k = 'negative', math.sqrt(-gauss)
            template = lambda x: np.sinh(k * x) / k
            dtemplate = lambda x: np.cosh(k * x)
            x1 = math.asinh(k * phi1) / k

        r0 = r1 - x1
        try:
            r0 = optimize.newton(lambda z: template(r1 - z) - phi1, r0, fprime=lambda z: -dtemplate(r1 - z), tol=1e-14, maxiter=50)
        except (RuntimeError, ZeroDivisionError) as err:
            raise NotSpaceform('Could not fit r0 of the ' + sign + ' curvature template: ' + str(err))

        mismatch = np.max(np.abs(template(r - r0) - phi))
        if mismatch > spaceform_tolerance * max(1.0, np.max(np.abs(phi))):
            raise NotSpaceform('phi does not match the ' + sign + ' curvature template (mismatch ' + str(mismatch) + ')')

        return SpaceformClassification(sign, k, float(r0), gauss)


    def describe(self):
        shown = {k: v for k, v in self.params.items() if k not in {'r', 'phi'}}
        return self.family + '(' + ', '.join(k + '=' + str(v) for k, v in sorted(shown.items())) + ')'


    def to_spec(self):
        d = {'family': self.family, 'domain': [self.r_min, self.r_max], 'phi_floor': self.phi_floor}
        for key, value in self.params.items():
            d[key] = value.tolist() if isinstance(value, np.ndarray) else value
        return d


def from_spec(spec):
    '''Makes a WarpPotential from a run-configuration dictionary like
       {"family": "sphere", "k": 1, "r0": 0, "domain": [0.1, 3]}'''
    if not isinstance(spec, dict) or 'family' not in spec:
        raise Error('Warp specification must be a dictionary with a "family" key')
    params = {k: v for k, v in spec.items() if k not in {'family', 'domain', 'phi_floor'}}
    return WarpPotential(spec['family'], domain=spec.get('domain'), phi_floor=spec.get('phi_floor', 1e-8), **params)
