"""Planar even log-Minkowski problem: recover ``h`` from its cone-volume density.

The density form of the measure identity is the periodic second-order ODE

    1/2 h (h + h'') = f,

solved by damped Newton iteration.  Unknowns live on the first half of the
grid (pi-periodic functions), which keeps every iterate exactly
origin-symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .body import (CONVEXITY_TOL, ConvexBody, fit_spectrum, make_disk,
                   random_perturbation, second_derivative,
                   second_derivative_matrix, spectrum_from_half_dft, validate)
from .functionals import GridDensity

SYMMETRY_RTOL = 1e-10


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class SolverOptions:
    max_iters: int = 50
    tol_residual: float | None = None
    min_step: float = 2.0 ** -20
    rtol_residual: float = 1e-12

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.tol_residual is not None and not self.tol_residual > 0:
            raise ValueError("tol_residual must be positive")

    def tolerance_for(self, f: GridDensity) -> float:
        if self.tol_residual is not None:
            return self.tol_residual
        return self.rtol_residual * float(np.max(np.abs(f.values)))


@dataclass(frozen=True, eq=False)
class SolverResult:
    body: ConvexBody | None
    residual_history: list[float]
    converged: bool
    iterations: int
    status: str = "converged"
    h: np.ndarray | None = field(default=None, repr=False)

    @property
    def final_residual(self) -> float:
        return self.residual_history[-1]

    def to_dict(self) -> dict:
        out = {
            "converged": self.converged,
            "iterations": self.iterations,
            "status": self.status,
            "residual_history": list(self.residual_history),
        }
        if self.body is not None:
            spec = self.body.spectrum.to_dict()
            spec["n"] = self.body.n
            out["body"] = spec
        return out


def residual(h, f: GridDensity) -> np.ndarray:
    """``1/2 h (h + h'') - f`` with the spectral ``h''``.

    ``h`` may be a :class:`ConvexBody` (its stored ``h''`` is used) or raw
    samples.  Origin-symmetric samples are differentiated through their
    even-harmonic fit, exactly as :func:`~symconvex.body.from_samples` does,
    so densities of constructed bodies round-trip to zero.
    """
    values = f.values if isinstance(f, GridDensity) else np.asarray(f, dtype=float)
    if isinstance(h, ConvexBody):
        hs, hpp = h.h, h.hpp
    else:
        hs = np.asarray(h, dtype=float)
        m = hs.size // 2
        if hs.size % 2 == 0 and hs.size >= 8 and np.array_equal(hs[:m], hs[m:]):
            hpp = fit_spectrum(hs).synthesize(hs.size, 2)
        else:
            hpp = second_derivative(hs)
    if hs.shape != values.shape:
        raise ValueError(f"length mismatch: {hs.size} samples vs {values.size} density values")
    return 0.5 * hs * (hs + hpp) - values


def check_density(f: GridDensity) -> None:
    v = f.values
    if not np.all(np.isfinite(v)):
        raise DensityError("density has non-finite values")
    if np.min(v) <= 0:
        raise DensityError(f"density must be strictly positive (min {np.min(v):.3e})")
    m = v.size // 2
    asym = float(np.max(np.abs(v[:m] - v[m:])))
    if asym > SYMMETRY_RTOL * float(np.max(v)):
        raise DensityError(
            f"density is not even (f(theta + pi) != f(theta), deviation {asym:.3e})")


@lru_cache(maxsize=8)
def _folded_d2(n: int) -> np.ndarray:
    """Second-derivative operator restricted to pi-periodic grid functions."""
    D2 = second_derivative_matrix(n)
    m = n // 2
    return D2[:m, :m] + D2[:m, m:]


def _tile(half: np.ndarray) -> np.ndarray:
    return np.concatenate([half, half])


class _HalfGridState:
    """An even function held by its half-grid DFT coefficients.

    ``h''`` is synthesized from ``-(2p)**2`` times the coefficients, so its
    rounding error is relative to ``|h''|`` instead of ``eps * |h| * k_max**2``
    as with differentiating rounded samples.
    """

    def __init__(self, m: int, X: np.ndarray):
        self.m = m
        self.X = X
        p = np.arange(X.size)
        self.h = np.fft.irfft(X, n=m)
        self.hpp = np.fft.irfft(-(2.0 * p) ** 2 * X, n=m)

    @classmethod
    def from_half_samples(cls, half):
        return cls(half.size, np.fft.rfft(half))

    def stepped(self, step_half: np.ndarray, t: float) -> "_HalfGridState":
        return _HalfGridState(self.m, self.X + t * np.fft.rfft(step_half))

    @property
    def rho(self) -> np.ndarray:
        return self.h + self.hpp


def solve_log_minkowski(f: GridDensity, opts: SolverOptions | None = None,
                        initial=None) -> SolverResult:
    """Damped Newton solve of ``1/2 h (h + h'') = f`` for even ``f``.

    Starts from the disk of matching area unless ``initial`` (a body or
    samples) is given.  Failure to converge is reported in the result, not
    raised.
    """
    opts = opts or SolverOptions()
    check_density(f)
    n = f.grid.n
    m = n // 2
    tol = opts.tolerance_for(f)
    mass = f.total
    if initial is None:
        h0 = np.full(m, math.sqrt(mass / math.pi))
    else:
        h0 = np.array(initial.h if isinstance(initial, ConvexBody) else initial, dtype=float)
        if h0.shape != (n,):
            raise ValueError("initial guess lives on a different grid")
        h0 = 0.5 * (h0[:m] + h0[m:])
    fh = 0.5 * (f.values[:m] + f.values[m:])
    D2 = _folded_d2(n)
    eye = np.eye(m)
    floor = CONVEXITY_TOL * float(np.max(h0))

    def sup_residual(st):
        R = 0.5 * st.h * st.rho - fh
        return R, float(np.max(np.abs(R)))

    state = _HalfGridState.from_half_samples(h0)
    R, r = sup_residual(state)
    history = [r]
    status = "max_iters"
    iterations = 0
    while r > tol and iterations < opts.max_iters:
        J = 0.5 * (state.h[:, None] * (eye + D2) + np.diag(state.rho))
        try:
            step = np.linalg.solve(J, -R)
        except np.linalg.LinAlgError:
            status = "singular"
            break
        if not np.all(np.isfinite(step)):
            status = "singular"
            break
        t = 1.0
        accepted = False
        while t >= opts.min_step:
            cand = state.stepped(step, t)
            # rho = h + h'' enters the residual, so it must stay positive
            if np.min(cand.h) > 0 and np.min(cand.rho) > floor:
                R_c, r_c = sup_residual(cand)
                if r_c < r:
                    accepted = True
                    break
            t *= 0.5
        if not accepted:
            status = "line_search_failed"
            break
        state, R, r = cand, R_c, r_c
        iterations += 1
        history.append(r)
    converged = r <= tol
    if converged:
        status = "converged"
    h = _tile(state.h)
    body = None
    if converged:
        spec = spectrum_from_half_dft(state.X, m)
        body = ConvexBody(f.grid, h, spec.synthesize(n, 2), spec)
        if not validate(body).ok:
            converged, status, body = False, "invalid_body", None
    return SolverResult(body, history, converged, iterations, status, h)


@dataclass(frozen=True, eq=False)
class UniquenessReport:
    results: list[SolverResult]
    distances: np.ndarray
    converged: list[bool]
    scale: float
    unique: bool | None

    def to_dict(self) -> dict:
        return {
            "converged": self.converged,
            "statuses": [r.status for r in self.results],
            "iterations": [r.iterations for r in self.results],
            "max_distance": (float(np.max(self.distances))
                             if all(self.converged) else None),
            "scale": self.scale,
            "unique": self.unique,
        }


def uniqueness_probe(f: GridDensity, n_starts: int = 5, perturbation: float = 0.2,
                     seed: int = 0, opts: SolverOptions | None = None,
                     k_max: int = 8, decay: float = 2.0, rtol: float = 1e-6) -> UniquenessReport:
    """Solve from the disk start and ``n_starts - 1`` random convex starts.

    ``unique`` is None when any start fails; otherwise it says whether all
    solutions lie within ``rtol * max(h)`` of each other in sup norm.
    """
    if n_starts < 2:
        raise ValueError("need at least two starts")
    check_density(f)
    n = f.grid.n
    r0 = math.sqrt(f.total / math.pi)
    rng = np.random.default_rng(seed)
    k_max = min(k_max, n // 2 - 2 - (n // 2) % 2)
    starts = [make_disk(r0, n)]
    for _ in range(n_starts - 1):
        starts.append(random_perturbation(rng, r0, k_max, decay, perturbation, n))
    results = [solve_log_minkowski(f, opts, initial=s) for s in starts]
    ok = [r.converged for r in results]
    dist = np.full((n_starts, n_starts), np.nan)
    for i, a in enumerate(results):
        for j, b in enumerate(results):
            if a.converged and b.converged:
                dist[i, j] = float(np.max(np.abs(a.h - b.h)))
    scale = max((float(np.max(r.h)) for r in results if r.converged), default=float("nan"))
    unique = None
    if all(ok):
        unique = bool(np.max(dist) < rtol * scale)
    return UniquenessReport(results, dist, ok, scale, unique)
