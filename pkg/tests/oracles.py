"""Independent reference values: closed-form support functions + adaptive quadrature.

Nothing here touches the grid, the FFT or the package's functionals.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.special import ellipe

TWO_PI = 2.0 * math.pi


def ellipse_h(a, b):
    return lambda t: math.sqrt((a * math.cos(t)) ** 2 + (b * math.sin(t)) ** 2)


def ellipse_rho(a, b):
    h = ellipse_h(a, b)
    return lambda t: (a * b) ** 2 / h(t) ** 3


def harmonic_h(a0, terms):
    def h(t):
        return a0 + sum(c * math.cos(k * t) + s * math.sin(k * t) for k, c, s in terms)
    return h


def harmonic_rho(a0, terms):
    def rho(t):
        return a0 + sum((1 - k * k) * (c * math.cos(k * t) + s * math.sin(k * t))
                        for k, c, s in terms)
    return rho


def circle_integral(fn):
    val, err = quad(fn, 0.0, TWO_PI, limit=400, epsabs=1e-14, epsrel=1e-13)
    return val


def ellipse_perimeter(a, b):
    a, b = max(a, b), min(a, b)
    return 4.0 * a * ellipe(1.0 - (b / a) ** 2)


def area(h, rho):
    return 0.5 * circle_integral(lambda t: h(t) * rho(t))


def mixed_volume(hK, rhoK, hL):
    return 0.5 * circle_integral(lambda t: hL(t) * rhoK(t))


def wulff_lhs(rhoK, hL, rhoL):
    """int (kappa_K / kappa_L) dV_L."""
    return 0.5 * circle_integral(lambda t: rhoL(t) / rhoK(t) * hL(t) * rhoL(t))


def blyz_lhs(hK, rhoK, hL):
    return 0.5 * circle_integral(lambda t: hK(t) / hL(t) * hK(t) * rhoK(t))


def log_minkowski_lhs(hK, rhoK, hL, rhoL):
    term1 = 0.5 * circle_integral(lambda t: math.log(rhoL(t) / rhoK(t)) * hL(t) * rhoL(t))
    VK, VL = area(hK, rhoK), area(hL, rhoL)
    return term1 + 0.5 * VL * math.log(VK / VL)


def flow_F(hK, rhoK, hL, rhoL, lam):
    """F(lam) directly from its definition, combined body built pointwise."""
    def h(t):
        return hK(t) + lam * hL(t)

    def rho(t):
        return rhoK(t) + lam * rhoL(t)

    term1 = 0.5 * circle_integral(lambda t: math.log(rhoL(t) / rho(t)) * hL(t) * rhoL(t))
    VM, VL = area(h, rho), area(hL, rhoL)
    return term1 + 0.5 * VL * math.log(VM / VL)


def sample(fn, n):
    return np.array([fn(2.0 * math.pi * j / n) for j in range(n)])


def flow_lambda2_limit(hK, rhoK, hL, rhoL):
    """lim lam**2 F(lam): the second-order term of the large-lambda expansion.

    The 1/lam terms cancel since int (rho_K/rho_L) dV_L = V(K, L).
    """
    quad_term = 0.25 * circle_integral(lambda t: rhoK(t) ** 2 / rhoL(t) * hL(t))
    VK, VL = area(hK, rhoK), area(hL, rhoL)
    VKL = mixed_volume(hK, rhoK, hL)
    return quad_term + 0.5 * VK - VKL ** 2 / VL
