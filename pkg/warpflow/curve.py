import math
import collections
import numpy as np
from warpflow import common, warp

class Error (Exception): pass
class GridSizeError (Error): pass


min_grid_size = 32

GeometrySample = collections.namedtuple('GeometrySample', [
    's_theta',
    'a',
    'b',
    'b_theta',
    'u',
    'kappa',
    'phi_s',
    'phi_ss',
    'speed',
])

Functionals = collections.namedtuple('Functionals', ['L', 'A', 'osc', 'lambda_', 'support_integral'])

PerturbationResult = collections.namedtuple('PerturbationResult', ['predicted', 'normalized', 'measured', 'eps', 'beta'])


def grid(n):
    return 2 * math.pi * np.arange(n) / n


def spectral_derivative(values, order=1):
    '''Periodic derivative on theta_j = 2*pi*j/n by the real FFT.
       Exact for trigonometric polynomials of degree < n/2.'''
    values = np.asarray(values, dtype=float)
    n = len(values)
    if np.all(values == values[0]):
        return np.zeros(n)
    k = np.fft.rfftfreq(n, d=1.0 / n)
    coeffs = np.fft.rfft(values) * (1j * k) ** order
    if order % 2 == 1 and n % 2 == 0:
        coeffs[-1] = 0
    return np.fft.irfft(coeffs, n=n)


def spectral_shift(values, delta):
    '''Samples of the trigonometric interpolant at theta_j + delta'''
    values = np.asarray(values, dtype=float)
    n = len(values)
    k = np.fft.rfftfreq(n, d=1.0 / n)
    coeffs = np.fft.rfft(values) * np.exp(1j * k * delta)
    if n % 2 == 0:
        # Nyquist mode is cos(n*theta/2); its sine part vanishes on the grid
        coeffs[-1] = np.fft.rfft(values)[-1].real * math.cos(k[-1] * delta)
    return np.fft.irfft(coeffs, n=n)


def trapezoid(values):
    '''Integral over the circle; spectrally accurate for smooth periodic data'''
    values = np.asarray(values, dtype=float)
    return float(np.sum(values)) * 2 * math.pi / len(values)


def interval_integral(values, a, b):
    '''Integral of the trigonometric interpolant of grid values over [a, b]'''
    values = np.asarray(values, dtype=float)
    n = len(values)
    c = np.fft.rfft(values) / n
    total = c[0].real * (b - a)
    last = len(c) - 1 if n % 2 == 0 else len(c)
    k = np.arange(1, last)
    total += np.sum(2 * (c[1:last] * (np.exp(1j * k * b) - np.exp(1j * k * a)) / (1j * k)).real)
    if n % 2 == 0:
        nyquist = n // 2
        total += c[-1].real * (math.sin(nyquist * b) - math.sin(nyquist * a)) / nyquist
    return float(total)


def harmonic_values(theta, r0, cos=None, sin=None):
    '''r0 + sum_k cos[k] cos(k theta) + sin[k] sin(k theta). Keys may be strings (from JSON)'''
    values = np.full(len(theta), float(r0))
    for coeffs, func in ((cos, np.cos), (sin, np.sin)):
        if coeffs is None:
            continue
        for k, amplitude in sorted(coeffs.items(), key=lambda x: int(x[0])):
            values += float(amplitude) * func(int(k) * theta)
    return values


class RadialCurve:
    '''Radial graph theta -> (rho(theta), theta), sampled on a uniform grid of n
       (a power of two) nodes. Immutable.'''
    def __init__(self, warp_potential, rho):
        rho = np.array(rho, dtype=float)
        n = len(rho)
        if rho.ndim != 1 or n < min_grid_size or n & (n - 1) != 0:
            raise GridSizeError('Grid size must be a power of two >= ' + str(min_grid_size) + ', got ' + str(rho.shape))
        if not np.all(np.isfinite(rho)):
            raise warp.OutOfDomain('Non-finite radius in curve')
        warp_potential.check_domain(rho)
        rho.setflags(write=False)
        self.warp = warp_potential
        self.rho = rho
        self.n = n


    @classmethod
    def from_function(cls, warp_potential, n, f):
        return cls(warp_potential, f(grid(n)))


    @classmethod
    def from_harmonics(cls, warp_potential, n, r0, cos=None, sin=None):
        return cls(warp_potential, harmonic_values(grid(n), r0, cos=cos, sin=sin))


    @classmethod
    def from_csv(cls, warp_potential, filename):
        theta, rho = common.read_csv(filename, ['theta', 'rho'])
        if len(theta) and np.max(np.abs(np.array(theta) - grid(len(theta)))) > 1e-9:
            raise Error('theta column of ' + filename + ' is not the uniform grid 2*pi*j/n')
        return cls(warp_potential, rho)


    def write_csv(self, filename):
        common.write_csv(filename, ['theta', 'rho'], zip(self.theta, self.rho))


    @property
    def theta(self):
        return grid(self.n)


    @property
    def osc(self):
        return float(np.max(self.rho) - np.min(self.rho))


    def with_rho(self, rho):
        return RadialCurve(self.warp, rho)


    def differentiate(self):
        '''Returns (rho_theta, rho_thetatheta)'''
        return spectral_derivative(self.rho, 1), spectral_derivative(self.rho, 2)


    def geometry(self):
        phi, dphi, ddphi, beta = self.warp.eval(self.rho)
        rho_theta, rho_thetatheta = self.differentiate()
        s_theta = np.sqrt(phi * phi + rho_theta * rho_theta)
        a = phi / s_theta
        b = rho_theta / s_theta
        # b_s = (a / phi) b_theta, so kappa = phi' a / phi - b_s / a
        b_theta = spectral_derivative(b)
        u = phi * a
        kappa = dphi * a / phi - b_theta / phi
        phi_s = spectral_derivative(self.warp.big_phi(self.rho)) / s_theta
        phi_ss = (phi ** 3 * rho_thetatheta + dphi * rho_theta ** 4) / (phi * phi + rho_theta * rho_theta) ** 2
        speed = dphi - u * kappa
        return GeometrySample(s_theta, a, b, b_theta, u, kappa, phi_s, phi_ss, speed)


    def length(self):
        rho_theta = spectral_derivative(self.rho)
        phi = self.warp.eval(self.rho)[0]
        return trapezoid(np.sqrt(phi * phi + rho_theta * rho_theta))


    def area(self):
        return trapezoid(self.warp.big_phi(self.rho))


    def functionals(self):
        phi = self.warp.eval(self.rho)[0]
        L = self.length()
        A = self.area()
        if self.warp.family == 'euclidean':
            # area measured from the plane's origin r = r0
            r0 = self.warp.params['r0']
            lambda_ = L * L - 4 * math.pi * (A + math.pi * r0 * r0)
        else:
            lambda_ = None
        # u ds = phi^2 dtheta
        return Functionals(L, A, self.osc, lambda_, trapezoid(phi * phi))


    def iso_difference(self):
        '''L^2 - F(A)'''
        L = self.length()
        return L * L - self.warp.iso_profile(self.area())


def perturbation_coefficient(warp_potential, r0, g, eps_list, n=256):
    '''Second-order coefficient of L^2 - F(A) for rho = r0 + eps*g.
       g is a function of theta or an array of n grid values.'''
    theta = grid(n)
    g_values = np.asarray(g(theta) if callable(g) else g, dtype=float)
    if g_values.shape != (n,):
        raise Error('Perturbation g must have ' + str(n) + ' grid values')

    beta = warp_potential.eval(r0)[3]
    g_mean = trapezoid(g_values) / (2 * math.pi)
    g_sq = trapezoid(g_values * g_values) / (2 * math.pi)
    g_theta_sq = trapezoid(spectral_derivative(g_values) ** 2) / (2 * math.pi)
    normalized = g_mean ** 2 + g_theta_sq - g_sq + (beta - 1) * (g_mean ** 2 - g_sq)
    predicted = 4 * math.pi ** 2 * normalized

    measured = []
    for eps in eps_list:
        curve = RadialCurve(warp_potential, r0 + eps * g_values)
        measured.append(curve.iso_difference() / (eps * eps))

    return PerturbationResult(predicted, normalized, measured, list(eps_list), beta)
