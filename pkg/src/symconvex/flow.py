"""The entropy deficit ``F(lam)`` along the Minkowski path ``K + lam L``.

    F(lam) = int log(kappa_{K+lam L} / kappa_L) dV_L
             + V(L)/2 * log(V(K + lam L) / V(L))

F is nonnegative, nonincreasing and tends to zero; its derivative is minus
the Wulff-Gage gap of the pair ``(K + lam L, L)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .body import ConvexBody, _same_grid, minkowski_combine
from .functionals import (area, cone_volume_density, mixed_volume,
                          radius_of_curvature, steiner_coefficients)

MONOTONE_SLACK = 1e-10


def default_lambdas() -> np.ndarray:
    return np.concatenate([[0.0], np.logspace(-2.0, math.log10(50.0), 100)])


def refine(lambdas) -> np.ndarray:
    """Insert the midpoint of every interval (halves each spacing)."""
    lam = np.asarray(lambdas, dtype=float)
    out = np.empty(2 * lam.size - 1)
    out[0::2] = lam
    out[1::2] = 0.5 * (lam[:-1] + lam[1:])
    return out


def evaluate_F(K: ConvexBody, L: ConvexBody, lam: float) -> float:
    _same_grid(K, L)
    if not lam >= 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    rK, rL = radius_of_curvature(K), radius_of_curvature(L)
    dVL = cone_volume_density(L)
    st = steiner_coefficients(K, L)
    VL = st.v2
    if lam < 1.0:
        # kappa_{K+lam L} / kappa_L = rho_L / (rho_K + lam rho_L)
        curv = dVL.integrate(np.log(rL) - np.log(rK + lam * rL))
        return curv + 0.5 * VL * math.log(st(lam) / VL)
    # factor lam out of both logs: the log(lam) parts cancel because dV_L has
    # mass V(L), leaving terms of size O(1/lam)
    curv = -dVL.integrate(np.log1p(rK / (lam * rL)))
    vol = 0.5 * VL * math.log1p((st.v1 + st.v0 / lam) / (st.v2 * lam))
    return curv + vol


def evaluate_F_prime(K: ConvexBody, L: ConvexBody, lam: float) -> float:
    """``-int (kappa_M / kappa_L) dV_L + V(L) V(M, L) / V(M)`` with ``M = K + lam L``."""
    _same_grid(K, L)
    if not lam >= 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    M = minkowski_combine(K, L, lam)
    rM, rL = radius_of_curvature(M), radius_of_curvature(L)
    ratio = cone_volume_density(L).integrate(rL / rM)
    return -ratio + area(L) * mixed_volume(M, L) / area(M)


def central_differences(lambdas, values) -> np.ndarray:
    """Second-order differences on a possibly nonuniform grid."""
    return np.gradient(np.asarray(values, dtype=float), np.asarray(lambdas, dtype=float),
                       edge_order=2)


@dataclass(frozen=True, eq=False)
class FlowTrace:
    lambdas: np.ndarray
    f_values: np.ndarray
    f_prime_analytic: np.ndarray
    f_prime_fd: np.ndarray

    @property
    def nonincreasing(self) -> bool:
        return bool(np.all(np.diff(self.f_values) <= MONOTONE_SLACK))

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self.f_values >= -MONOTONE_SLACK))

    @property
    def derivative_nonpositive(self) -> bool:
        return bool(np.all(self.f_prime_analytic <= MONOTONE_SLACK))

    @property
    def fd_error(self) -> float:
        return float(np.max(np.abs(self.f_prime_fd - self.f_prime_analytic)))

    def to_csv(self) -> str:
        lines = ["lambda,F,Fprime_analytic,Fprime_fd"]
        for row in zip(self.lambdas, self.f_values, self.f_prime_analytic, self.f_prime_fd):
            lines.append(",".join(format(float(x), ".17g") for x in row))
        return "\n".join(lines) + "\n"


def trace(K: ConvexBody, L: ConvexBody, lambdas=None) -> FlowTrace:
    lam = default_lambdas() if lambdas is None else np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size < 3:
        raise ValueError("need a one-dimensional grid of at least three lambdas")
    if np.any(lam < 0) or np.any(np.diff(lam) <= 0):
        raise ValueError("lambdas must be nonnegative and strictly increasing")
    f = np.array([evaluate_F(K, L, x) for x in lam])
    fp = np.array([evaluate_F_prime(K, L, x) for x in lam])
    return FlowTrace(lam, f, fp, central_differences(lam, f))


@dataclass(frozen=True, eq=False)
class AsymptoticReport:
    lambdas: np.ndarray
    f_values: np.ndarray
    lambda_f: np.ndarray
    lambda2_f: np.ndarray
    decreasing: bool
    nonnegative: bool
    decay_order: np.ndarray

    def to_dict(self) -> dict:
        return {
            "lambdas": self.lambdas.tolist(),
            "F": self.f_values.tolist(),
            "lambda_F": self.lambda_f.tolist(),
            "lambda2_F": self.lambda2_f.tolist(),
            "decreasing": self.decreasing,
            "nonnegative": self.nonnegative,
            "decay_order": self.decay_order.tolist(),
        }


def asymptotic_check(K: ConvexBody, L: ConvexBody, lambdas=(10.0, 100.0, 1000.0)) -> AsymptoticReport:
    """Large-lambda behaviour of F.

    ``decay_order[i]`` is the local exponent ``p`` in ``F ~ lam**-p``
    between consecutive lambdas (nan where F vanishes).
    """
    lam = np.asarray(lambdas, dtype=float)
    if np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
        raise ValueError("lambdas must be positive and strictly increasing")
    f = np.array([evaluate_F(K, L, x) for x in lam])
    with np.errstate(divide="ignore", invalid="ignore"):
        order = -np.diff(np.log(np.abs(f))) / np.diff(np.log(lam))
    order = np.where(np.isfinite(order), order, np.nan)
    return AsymptoticReport(
        lam, f, lam * f, lam * lam * f,
        decreasing=bool(np.all(np.diff(f) <= MONOTONE_SLACK)),
        nonnegative=bool(np.all(f >= -MONOTONE_SLACK)),
        decay_order=order,
    )
