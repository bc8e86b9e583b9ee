"""Geometric functionals of planar bodies, all evaluated on the angle grid.

Every boundary integral is pulled back to the circle through
``dS_K = (h_K + h_K'') dtheta`` and summed with the periodic trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .body import (CONVEXITY_TOL, AngleGrid, ConvexBody, InvalidBodyError,
                   _same_grid, minkowski_combine)


@dataclass(frozen=True, eq=False)
class GridDensity:
    """A density against ``dtheta`` on the angle grid."""

    grid: AngleGrid
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"density must have {self.grid.n} samples, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def total(self) -> float:
        return self.grid.integrate(self.values)

    @property
    def theta(self) -> np.ndarray:
        return self.grid.theta

    def integrate(self, f) -> float:
        """Integral of the samplewise function ``f`` against this density."""
        return self.grid.integrate(np.asarray(f) * self.values)

    def __mul__(self, c: float) -> "GridDensity":
        return GridDensity(self.grid, c * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SteinerCoefficients:
    """``area(K + lam L) = v0 + v1*lam + v2*lam**2``."""

    v0: float
    v1: float
    v2: float

    def __call__(self, lam):
        return self.v0 + lam * (self.v1 + lam * self.v2)

    def derivative(self, lam):
        return self.v1 + 2.0 * self.v2 * lam


def perimeter(K: ConvexBody) -> float:
    return K.grid.integrate(K.h)


def area(K: ConvexBody) -> float:
    return 0.5 * K.grid.integrate(K.h * K.rho)


def mixed_volume(K: ConvexBody, L: ConvexBody) -> float:
    """``V(K, L) = 1/2 int h_L (h_K + h_K'') dtheta``."""
    _same_grid(K, L)
    return 0.5 * K.grid.integrate(L.h * K.rho)


def radius_of_curvature(K: ConvexBody) -> np.ndarray:
    rho = K.rho
    if np.min(rho) <= CONVEXITY_TOL * K.scale_length:
        raise InvalidBodyError(f"body is not strictly convex (min h+h'' = {np.min(rho):.3e})")
    return rho


def curvature(K: ConvexBody) -> np.ndarray:
    return 1.0 / radius_of_curvature(K)


def cone_volume_density(K: ConvexBody) -> GridDensity:
    return GridDensity(K.grid, 0.5 * K.h * K.rho)


def mixed_cone_volume_density(K: ConvexBody, L: ConvexBody) -> GridDensity:
    """Density of ``1/2 h_L dS_K``; total mass ``V(K, L)``."""
    _same_grid(K, L)
    return GridDensity(K.grid, 0.5 * L.h * K.rho)


def steiner_coefficients(K: ConvexBody, L: ConvexBody, rtol: float = 1e-10) -> SteinerCoefficients:
    """Coefficients of the area quadratic of ``K + lam L``.

    Also checks ``dV(K + lam L)/dlam = 2 V(K + lam L, L)`` at lam = 0 and 1.
    """
    coeffs = SteinerCoefficients(area(K), 2.0 * mixed_volume(K, L), area(L))
    for lam in (0.0, 1.0):
        lhs = coeffs.derivative(lam)
        rhs = 2.0 * mixed_volume(minkowski_combine(K, L, lam), L)
        if abs(lhs - rhs) > rtol * max(abs(lhs), abs(rhs)):
            raise ArithmeticError(
                f"Steiner derivative identity failed at lambda={lam}: {lhs!r} vs {rhs!r}")
    return coeffs


def sum_curvature(K: ConvexBody, L: ConvexBody, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """Curvature of ``K + lam L`` from the two curvatures, and its lam-derivative."""
    _same_grid(K, L)
    if not lam >= 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    kK = curvature(K)
    kL = curvature(L)
    k = kK * kL / (kL + lam * kK)
    return k, -k * k / kL


def log_curvature_ratio(K: ConvexBody, L: ConvexBody) -> np.ndarray:
    """``log(kappa_K / kappa_L)`` evaluated as ``log rho_L - log rho_K``."""
    _same_grid(K, L)
    return np.log(radius_of_curvature(L)) - np.log(radius_of_curvature(K))


def curvature_entropy(K: ConvexBody, L: ConvexBody) -> float:
    """``E(K, L) = -int log(kappa_L / kappa_K) dV_K``."""
    return cone_volume_density(K).integrate(log_curvature_ratio(K, L))
