"""Verifiers for the curvature and log-Minkowski inequalities.

Each verifier returns an :class:`InequalityReport` whose ``gap`` is
nonnegative exactly when the inequality holds, whatever its direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .body import ConvexBody, _same_grid, make_disk, scale
from .functionals import (area, cone_volume_density, curvature_entropy,
                          log_curvature_ratio, mixed_cone_volume_density,
                          mixed_volume, perimeter, radius_of_curvature)

TOL_EQ = 1e-7
TOL_GAP = 1e-9
IDENTITY_RTOL = 1e-10
_TINY = 1e-300


class IdentityError(ArithmeticError):
    """An internal integral identity failed beyond rounding."""


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    gap: float
    rel_gap: float
    equality: bool
    dilate: bool | None = None
    sense: str = ">="
    details: dict = field(default_factory=dict)

    def holds(self, tol: float = TOL_GAP) -> bool:
        return self.rel_gap >= -tol

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "rel_gap": self.rel_gap,
            "equality": self.equality,
            "dilate": self.dilate,
        }
        if self.details:
            out["details"] = dict(self.details)
        return out


def _report(name, lhs, rhs, *, sense=">=", scale=None, dilate=None, details=None,
            tol_eq=TOL_EQ) -> InequalityReport:
    lhs, rhs = float(lhs), float(rhs)
    gap = lhs - rhs if sense == ">=" else rhs - lhs
    if scale is None:
        scale = max(abs(lhs), abs(rhs))
    rel = gap / max(scale, _TINY)
    return InequalityReport(name, lhs, rhs, gap, rel, abs(rel) < tol_eq, dilate, sense,
                            details or {})


def dilation_deviation(K: ConvexBody, L: ConvexBody) -> float:
    """Max relative deviation of ``h_K / h_L`` from its median."""
    _same_grid(K, L)
    ratio = K.h / L.h
    med = float(np.median(ratio))
    return float(np.max(np.abs(ratio - med)) / med)


def are_dilates(K: ConvexBody, L: ConvexBody, tol: float = TOL_EQ) -> bool:
    return dilation_deviation(K, L) < tol


def _check_identity(label, a, b, rtol=IDENTITY_RTOL):
    if abs(a - b) > rtol * max(abs(a), abs(b), _TINY):
        raise IdentityError(f"{label}: {a!r} != {b!r}")


def wulff_ratio_integral(K: ConvexBody, L: ConvexBody) -> float:
    """``int (kappa_K / kappa_L) dV_L``."""
    _same_grid(K, L)
    return cone_volume_density(L).integrate(radius_of_curvature(L) / radius_of_curvature(K))


def support_ratio_integral(K: ConvexBody, L: ConvexBody) -> float:
    """``int (h_K / h_L) dV_K``."""
    _same_grid(K, L)
    return cone_volume_density(K).integrate(K.h / L.h)


def gage(K: ConvexBody, tol_eq: float = TOL_EQ) -> InequalityReport:
    lhs = K.grid.integrate(1.0 / radius_of_curvature(K))
    rhs = math.pi * perimeter(K) / area(K)
    dev = float(np.max(np.abs(K.h - np.median(K.h))) / np.median(K.h))
    return _report("gage", lhs, rhs, dilate=dev < tol_eq, tol_eq=tol_eq)


def wulff_gage(K: ConvexBody, L: ConvexBody, tol_eq: float = TOL_EQ) -> InequalityReport:
    lhs = wulff_ratio_integral(K, L)
    rhs = area(L) * mixed_volume(K, L) / area(K)
    # boundary form over dK with weight kappa_K^2 / kappa_L^2 h_L
    rK, rL = radius_of_curvature(K), radius_of_curvature(L)
    boundary_form = K.grid.integrate((rL / rK) ** 2 * L.h * rK)
    _check_identity("boundary form of the Wulff-Gage integral", boundary_form, 2.0 * lhs)
    return _report("wulff_gage", lhs, rhs, dilate=are_dilates(K, L, tol_eq), tol_eq=tol_eq,
                   details={"boundary_form": boundary_form, "boundary_rhs": 2.0 * rhs})


def blyz_ratio(K: ConvexBody, L: ConvexBody, tol_eq: float = TOL_EQ) -> InequalityReport:
    """Upper bound ``int (h_K/h_L) dV_K <= V(K) V(K,L) / V(L)``."""
    lhs = support_ratio_integral(K, L)
    rhs = area(K) * mixed_volume(K, L) / area(L)
    return _report("blyz_ratio", lhs, rhs, sense="<=", dilate=are_dilates(K, L, tol_eq),
                   tol_eq=tol_eq)


def normalized_lower_bound(K: ConvexBody, L: ConvexBody,
                           tol_eq: float = TOL_EQ) -> InequalityReport:
    """Compare ``K`` rescaled to the area of ``L`` against ``L`` itself."""
    _same_grid(K, L)
    Kbar = scale(K, math.sqrt(area(L) / area(K)))
    lhs = wulff_ratio_integral(Kbar, L)
    rhs = mixed_volume(L, Kbar)
    dev = float(np.max(np.abs(Kbar.h - L.h)) / np.max(L.h))
    return _report("normalized_lower_bound", lhs, rhs, dilate=dev < tol_eq, tol_eq=tol_eq,
                   details={"max_abs_diff_normalized": dev})


def cauchy_schwarz_chain(K: ConvexBody, L: ConvexBody,
                         tol_eq: float = TOL_EQ) -> InequalityReport:
    """Product and sum forms of the support/curvature ratio bound.

    Both ratio integrals are rewritten against ``1/2 h_L dS_K`` first; the
    rewrites are checked to rounding before the bounds are reported.
    """
    wulff = wulff_ratio_integral(K, L)
    support = support_ratio_integral(K, L)
    vkl = mixed_volume(K, L)
    mixed = mixed_cone_volume_density(K, L)
    rK, rL = radius_of_curvature(K), radius_of_curvature(L)
    _check_identity("curvature ratio against the mixed measure",
                    mixed.integrate((rL / rK) ** 2), wulff)
    _check_identity("support ratio against the mixed measure",
                    mixed.integrate((K.h / L.h) ** 2), support)
    sum_lhs = wulff + support
    sum_rhs = 2.0 * vkl
    sum_gap = sum_lhs - sum_rhs
    return _report(
        "cauchy_schwarz_chain", wulff * support, vkl * vkl,
        dilate=are_dilates(K, L, tol_eq), tol_eq=tol_eq,
        details={
            "sum_lhs": sum_lhs,
            "sum_rhs": sum_rhs,
            "sum_gap": sum_gap,
            "sum_rel_gap": sum_gap / max(abs(sum_lhs), abs(sum_rhs)),
        })


def log_minkowski_terms(K: ConvexBody, L: ConvexBody) -> tuple[float, float]:
    """The curvature-log integral and the area-log term of the entropy bound."""
    term1 = cone_volume_density(L).integrate(log_curvature_ratio(K, L))
    VL = area(L)
    term2 = 0.5 * VL * math.log(area(K) / VL)
    return term1, term2


def log_minkowski_entropy(K: ConvexBody, L: ConvexBody,
                          tol_eq: float = TOL_EQ) -> InequalityReport:
    term1, term2 = log_minkowski_terms(K, L)
    entropy = curvature_entropy(L, K)
    _check_identity("curvature entropy relation", term1, -entropy)
    # both terms carry area units; V(L) keeps the scale nonzero at equality
    scale_ = max(abs(term1), abs(term2), area(L))
    return _report("log_minkowski_entropy", term1 + term2, 0.0, scale=scale_,
                   dilate=are_dilates(K, L, tol_eq), tol_eq=tol_eq,
                   details={"curvature_term": term1, "area_term": term2,
                            "curvature_entropy_LK": entropy})


def entropy_corollary(K: ConvexBody, tol_eq: float = TOL_EQ,
                      tol_gap: float = IDENTITY_RTOL) -> InequalityReport:
    """Disk-reference entropy bound in both its printed and its consistent form.

    ``int kappa log kappa dS`` pulls back to ``-int log rho dtheta``.  The
    consistent form carries ``pi * log(V/pi)``; the printed one carries
    ``log(V/pi)``.  The report's main sides are the consistent form.
    """
    rho = radius_of_curvature(K)
    kappa_log = -K.grid.integrate(np.log(rho))
    area_log = math.log(area(K) / math.pi)
    corrected = kappa_log + math.pi * area_log
    stated = kappa_log + area_log
    B = make_disk(1.0, K.grid)
    reference = 2.0 * log_minkowski_entropy(K, B, tol_eq).lhs
    scale_ = max(abs(kappa_log), math.pi * abs(area_log), math.pi)
    dev = float(np.max(np.abs(K.h - np.median(K.h))) / np.median(K.h))
    stated_consistent = abs(stated - reference) <= tol_gap * scale_
    corrected_consistent = abs(corrected - reference) <= tol_gap * scale_
    return _report(
        "entropy_corollary", corrected, 0.0, scale=scale_, dilate=dev < tol_eq, tol_eq=tol_eq,
        details={
            "stated_lhs": stated,
            "stated_gap": stated,
            "stated_holds": stated >= -tol_gap * scale_,
            "stated_consistent": bool(stated_consistent),
            "corrected_consistent": bool(corrected_consistent),
            "twice_log_minkowski_vs_disk": reference,
        })


@dataclass(frozen=True)
class UniquenessWitness:
    """The four curvature-ratio integrals of the two-sided squeeze."""

    kk_over_kl_dVL: float
    kl_over_kk_dVL: float
    kl_over_kk_dVK: float
    kk_over_kl_dVK: float
    forward_gap: float
    reverse_gap: float
    density_gap: float
    densities_agree: bool
    collapsed: bool

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def uniqueness_witness(K: ConvexBody, L: ConvexBody, tol: float = TOL_EQ) -> UniquenessWitness:
    _same_grid(K, L)
    rK, rL = radius_of_curvature(K), radius_of_curvature(L)
    dVK, dVL = cone_volume_density(K), cone_volume_density(L)
    a = dVL.integrate(rL / rK)
    b = dVL.integrate(rK / rL)
    c = dVK.integrate(rK / rL)
    d = dVK.integrate(rL / rK)
    VK, VL = area(K), area(L)
    forward = a - VL / VK * b
    reverse = c - VK / VL * d
    scale_ = max(abs(a), abs(b), abs(c), abs(d))
    density_gap = float(np.max(np.abs(dVK.values - dVL.values)))
    vals = np.array([a, b, c, d])
    return UniquenessWitness(
        a, b, c, d, forward, reverse, density_gap,
        densities_agree=density_gap <= tol * float(np.max(dVL.values)),
        collapsed=bool(np.ptp(vals) <= tol * scale_),
    )


def all_reports(K: ConvexBody, L: ConvexBody, tol_eq: float = TOL_EQ) -> list[InequalityReport]:
    """Run every verifier on the pair; single-body ones use ``K``."""
    return [
        gage(K, tol_eq),
        wulff_gage(K, L, tol_eq),
        blyz_ratio(K, L, tol_eq),
        normalized_lower_bound(K, L, tol_eq),
        cauchy_schwarz_chain(K, L, tol_eq),
        log_minkowski_entropy(K, L, tol_eq),
        entropy_corollary(K, tol_eq),
    ]
