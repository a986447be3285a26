import math
import sys
import collections
import numpy as np
from scipy import integrate, interpolate
from warpflow import common, curve, warp

class Error (Exception): pass
class InvalidOffset (Error): pass
class PoleCrossing (Error): pass
class StalledTheta (Error): pass


min_theta_speed = 1e-12
spaceform_beta_tolerance = 1e-8
pole_tolerance = 1e-12

ProfileFit = collections.namedtuple('ProfileFit', ['residual', 'a', 'alpha'])
OffsetAngle = collections.namedtuple('OffsetAngle', ['f', 'g1', 'g2', 'df'])


class CircleSpec:
    '''Translated circle. Euclidean: centre a*R*(sin alpha, cos alpha), radius R.
       Sphere: geodesic radius R about (sin f, 0, cos f) with sin f = a*sin R,
       so alpha is always pi/2 in this model.'''
    def __init__(self, model, a, R, alpha=0.0):
        if model not in common.allowed_models:
            raise Error('Circle model "' + str(model) + '" not recognised. Must be one of: ' + ', '.join(common.allowed_models))
        self.model = model
        self.a = float(a)
        self.R = float(R)
        self.alpha = math.pi / 2 if model == 'sphere' else float(alpha)
        if not abs(self.a) < 1:
            raise InvalidOffset('Offset ratio must satisfy |a| < 1, got ' + str(self.a))
        if not self.R > 0 or (model == 'sphere' and not self.R < math.pi):
            raise Error('Bad circle radius ' + str(self.R))


    def default_warp(self):
        if self.model == 'sphere':
            return warp.WarpPotential('sphere', k=1.0, r0=0.0)
        return warp.WarpPotential('euclidean', domain=(0.0, max(warp.default_outer_radius, 2 * self.R * (1 + abs(self.a)))))


    def to_curve(self, n, warp_potential=None):
        if self.model == 'sphere':
            return spherical_circle(self.a, self.R, n, warp_potential=warp_potential)
        return euclidean_circle(self.a, self.alpha, self.R, n, warp_potential=warp_potential)


    def far_point(self):
        '''(r, theta) of the point of largest r'''
        if self.model == 'sphere':
            f = math.asin(self.a * math.sin(self.R))
            return f + self.R, 0.0
        return self.R * (1 + self.a), math.pi / 2 - self.alpha


def euclidean_circle(a, alpha, R, n, warp_potential=None):
    '''Circle of radius R centred at a*R*(sin alpha, cos alpha), with x = r cos theta,
       y = r sin theta. Its radial graph satisfies r_s = a cos(theta + alpha).'''
    spec = CircleSpec('euclidean', a, R, alpha=alpha)
    if warp_potential is None:
        warp_potential = spec.default_warp()
    theta = curve.grid(n)
    centre = a * R * np.array([math.sin(alpha), math.cos(alpha)])
    # ray from the origin meets the circle once since |centre| < R
    e_dot_c = np.cos(theta) * centre[0] + np.sin(theta) * centre[1]
    rho = e_dot_c + np.sqrt(e_dot_c * e_dot_c - centre.dot(centre) + R * R)
    return curve.RadialCurve(warp_potential, rho)


def offset_angle(b, R):
    '''f(R) = arcsin(b sin R), with g1 = f + R, g2 = f - R and f'(R)'''
    R = np.asarray(R, dtype=float)
    f = np.arcsin(b * np.sin(R))
    df = b * np.cos(R) / np.sqrt(1 - b * b * np.sin(R) ** 2)
    return OffsetAngle(f, f + R, f - R, df)


def spherical_circle(b, R, n, warp_potential=None):
    '''Geodesic circle of radius R about p = (sin f, 0, cos f), sin f = b sin R, on the
       unit sphere with x = sin r cos theta, y = sin r sin theta. Its radial graph
       satisfies r_s = b cos(theta + pi/2).'''
    if abs(b) <= 1 and 0 < R < math.pi:
        f = float(offset_angle(b, R).f)
        if R - abs(f) <= pole_tolerance or abs(f) + R >= math.pi - pole_tolerance:
            raise PoleCrossing('Circle of radius ' + str(R) + ' about polar angle ' + str(f) + ' meets a pole')
    spec = CircleSpec('sphere', b, R)
    if warp_potential is None:
        warp_potential = spec.default_warp()
    theta = curve.grid(n)
    A = np.cos(theta) * math.sin(f)
    B = math.cos(f)
    rho = np.arctan2(A, B) + np.arccos(math.cos(R) / np.sqrt(A * A + B * B))
    return curve.RadialCurve(warp_potential, rho)


def rs_profile_residual(c, a=None, alpha=0.0):
    '''max_j |b_j - a cos(theta_j + alpha)|. When a is None, (a, alpha) is the
       least-squares first-harmonic fit of b'''
    b = c.geometry().b
    theta = c.theta
    if a is None:
        cos_coeff = curve.trapezoid(b * np.cos(theta)) / math.pi
        sin_coeff = curve.trapezoid(b * np.sin(theta)) / math.pi
        a = math.hypot(cos_coeff, sin_coeff)
        alpha = math.atan2(-sin_coeff, cos_coeff)
    residual = float(np.max(np.abs(b - a * np.cos(theta + alpha))))
    return ProfileFit(residual, a, alpha)


class CharacteristicPath:
    def __init__(self, s, r, theta, a, alpha, closure_defect):
        self.s = s
        self.r = r
        self.theta = theta
        self.a = a
        self.alpha = alpha
        self.closure_defect = closure_defect


    def __len__(self):
        return len(self.s)


    def write_csv(self, filename):
        common.write_csv(filename, ['s', 'r', 'theta'], zip(self.s, self.r, self.theta))


    def to_curve(self, warp_potential, n):
        '''Resamples r(theta) onto the uniform grid with a periodic cubic spline'''
        theta0 = self.theta[0]
        theta = self.theta.copy()
        r = self.r.copy()
        theta[-1] = theta0 + 2 * math.pi
        r[-1] = r[0]
        keep = np.append(np.diff(theta) > 1e-12, True)
        spline = interpolate.CubicSpline(theta[keep], r[keep], bc_type='periodic')
        grid_theta = theta0 + np.mod(curve.grid(n) - theta0, 2 * math.pi)
        return curve.RadialCurve(warp_potential, spline(grid_theta))


def integrate_characteristic(warp_potential, a, alpha, p0, ds, verbose=False):
    '''Integrates r' = a cos(theta + alpha), theta' = sqrt(1 - a^2 cos^2(theta + alpha))/phi(r)
       from p0 = (r, theta) until theta has advanced by 2*pi'''
    if not abs(a) < 1:
        raise InvalidOffset('Offset ratio must satisfy |a| < 1, got ' + str(a))
    if not ds > 0:
        raise Error('Step ds must be positive, got ' + str(ds))

    r0, theta0 = float(p0[0]), float(p0[1])
    phi0 = warp_potential.eval(r0)[0]

    def rhs(s, y):
        c = math.cos(y[1] + alpha)
        phi = warp_potential.eval(y[0])[0]
        return [a * c, math.sqrt(max(0.0, 1 - a * a * c * c)) / phi]

    def full_turn(s, y):
        return y[1] - theta0 - 2 * math.pi
    full_turn.terminal = True
    full_turn.direction = 1

    s_max = 100 * 2 * math.pi * phi0 / math.sqrt(1 - a * a)
    if verbose:
        print('{:_^79}'.format(' Integrating characteristic '), flush=True)
        print('Start (r, theta) = (', r0, ', ', theta0, '), a=', a, ', alpha=', alpha, ', ds=', ds, sep='')

    solution = integrate.solve_ivp(rhs, (0.0, s_max), [r0, theta0], method='DOP853', rtol=1e-12, atol=1e-12, max_step=ds, events=full_turn, dense_output=True)

    if not solution.success and solution.status != 1:
        raise Error('Characteristic integration failed: ' + solution.message)
    if len(solution.t_events[0]) == 0:
        raise StalledTheta('theta did not advance by 2*pi within arc length ' + str(s_max))

    s_end = float(solution.t_events[0][0])
    r_end, theta_end = solution.y_events[0][0]
    s = np.arange(0.0, s_end, ds)
    if s_end - s[-1] < 1e-6 * ds:
        s = s[:-1]
    s = np.append(s, s_end)
    r, theta = solution.sol(s)
    r[-1], theta[-1] = r_end, theta_end

    phi = np.asarray(warp_potential.eval(r)[0])
    c = np.cos(theta + alpha)
    theta_speed = np.sqrt(np.maximum(0.0, 1 - a * a * c * c)) / phi
    if np.min(theta_speed) < min_theta_speed or np.any(np.diff(theta) <= 0):
        raise StalledTheta('theta stopped increasing along the characteristic (min dtheta/ds = ' + str(np.min(theta_speed)) + ')')

    beta = np.asarray(warp_potential.eval(np.linspace(r.min(), r.max(), 33))[3])
    if np.max(np.abs(beta - 1)) > spaceform_beta_tolerance:
        print('WARNING: warp ', warp_potential.describe(), ' is not a beta == 1 space form on [', r.min(), ', ', r.max(), ']. Closed characteristics are not expected', sep='', file=sys.stderr)

    closure_defect = float(abs(r_end - r0) + abs(theta_end - theta0 - 2 * math.pi))
    if verbose:
        print('Closed after arc length', s_end, 'with defect', closure_defect)
    return CharacteristicPath(s, r, theta, a, alpha, closure_defect)
