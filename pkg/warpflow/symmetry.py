import math
import collections
import numpy as np
from scipy import optimize
from warpflow import curve

class Error (Exception): pass
class OffGridAxis (Error): pass


grid_tolerance = 1e-9

CutResult = collections.namedtuple('CutResult', ['curve1', 'curve2', 'axis', 'L1', 'A1', 'L2', 'A2'])


class Axis:
    '''Axis of the reflection theta -> 2*alpha - theta'''
    def __init__(self, alpha):
        self.alpha = float(alpha) % (2 * math.pi)


    def __repr__(self):
        return 'Axis(' + repr(self.alpha) + ')'


    def mirror_index(self, n):
        '''Returns m in [0, 2n) with 2*alpha = m * 2*pi/n'''
        m_float = self.alpha * n / math.pi
        m = int(round(m_float))
        if abs(m_float - m) > grid_tolerance:
            raise OffGridAxis('Axis alpha=' + str(self.alpha) + ' is not on the grid or half-grid of ' + str(n) + ' nodes. Use snap_axis first')
        return m % (2 * n)


    def mirror_nodes(self, n):
        '''Index of the mirror image of each node'''
        return (self.mirror_index(n) - np.arange(n)) % n


def _axis(axis):
    return axis if isinstance(axis, Axis) else Axis(axis)


def reflect(c, axis):
    return c.with_rho(c.rho[_axis(axis).mirror_nodes(c.n)])


def symmetry_defect(c, axis):
    return float(np.max(np.abs(c.rho - c.rho[_axis(axis).mirror_nodes(c.n)])))


def half_functionals(c, axis):
    '''(L1, A1, L2, A2) of the two symmetrized curves, from integrals of
       the curve's trigonometric interpolant over each half-circle.
       The axis may be off the grid.'''
    alpha = _axis(axis).alpha
    s_theta = c.geometry().s_theta
    big_phi = c.warp.big_phi(c.rho)
    L1 = 2 * curve.interval_integral(s_theta, alpha - math.pi, alpha)
    A1 = 2 * curve.interval_integral(big_phi, alpha - math.pi, alpha)
    L2 = 2 * curve.interval_integral(s_theta, alpha, alpha + math.pi)
    A2 = 2 * curve.interval_integral(big_phi, alpha, alpha + math.pi)
    return L1, A1, L2, A2


def cut_and_reflect(c, axis):
    '''curve1 keeps theta in [alpha - pi, alpha], curve2 keeps [alpha, alpha + pi].
       Each is completed by its mirror image. Nodes on the cut belong to both.'''
    axis = _axis(axis)
    m = axis.mirror_index(c.n)
    mirror = axis.mirror_nodes(c.n)
    # (2j - m) mod 2n is theta_j - alpha in units of half a grid step
    d = (2 * np.arange(c.n) - m) % (2 * c.n)
    keep1 = (d == 0) | (d >= c.n)
    keep2 = d <= c.n
    curve1 = c.with_rho(np.where(keep1, c.rho, c.rho[mirror]))
    curve2 = c.with_rho(np.where(keep2, c.rho, c.rho[mirror]))
    L1, A1, L2, A2 = half_functionals(c, axis)
    return CutResult(curve1, curve2, axis, L1, A1, L2, A2)


def equalizing_axis(c):
    '''Axis where both symmetrized curves enclose the same area. Uses
       h(alpha + pi) = -h(alpha) to bracket a root in [0, pi]'''
    big_phi = c.warp.big_phi(c.rho)
    h = lambda alpha: 2 * (curve.interval_integral(big_phi, alpha - math.pi, alpha) - curve.interval_integral(big_phi, alpha, alpha + math.pi))
    A0 = curve.trapezoid(big_phi)
    h0 = h(0.0)
    if abs(h0) <= 1e-14 * max(1.0, abs(A0)):
        return Axis(0.0)
    alpha = optimize.brentq(h, 0.0, math.pi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)
    return Axis(alpha)


def rotate(c, delta):
    '''Curve theta -> rho(theta + delta)'''
    return c.with_rho(curve.spectral_shift(c.rho, delta))


def snap_axis(c, axis):
    '''Rotates c so that the axis lands on the nearest grid or half-grid angle.
       Returns (rotated curve, snapped axis).'''
    alpha = _axis(axis).alpha
    half_step = math.pi / c.n
    snapped = round(alpha / half_step) * half_step
    return rotate(c, alpha - snapped), Axis(snapped)


def mollify(c, h):
    '''Periodic convolution with the unit-mass bump exp(1/((theta/h)^2 - 1))'''
    if not 0 < h < math.pi:
        raise Error('Mollifier width must be in (0, pi), got ' + str(h))
    step = 2 * math.pi / c.n
    half_width = int(math.ceil(h / step)) - 1
    offsets = np.arange(0, half_width + 1)
    x = offsets * step / h
    weights = np.exp(1 / (x * x - 1))
    total = weights[0] + 2 * np.sum(weights[1:])
    weights = weights / total

    rho = weights[0] * c.rho
    for m, w in zip(offsets[1:], weights[1:]):
        rho = rho + w * (np.roll(c.rho, m) + np.roll(c.rho, -m))
    return c.with_rho(rho)
