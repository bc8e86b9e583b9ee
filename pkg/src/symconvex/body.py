"""Origin-symmetric strictly convex planar bodies stored by support function.

A body is a set of support-function samples ``h(theta_j)`` on the uniform
grid ``theta_j = 2*pi*j/n`` together with the radius-of-curvature ingredient
``h''`` and a finite even-harmonic spectrum.  Origin symmetry is structural:
samples are computed on the first half of the grid and tiled, so
``h[j] == h[j + n/2]`` holds bitwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_N = 256
CONVEXITY_TOL = 1e-9


class InvalidBodyError(ValueError):
    """Raised when samples fail positivity, convexity or symmetry.

    The offending :class:`ValidationReport` is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class GridMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class AngleGrid:
    n: int = DEFAULT_N

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ValueError(f"grid size must be an integer, got {self.n!r}")
        if self.n < 8 or self.n % 2:
            raise ValueError(f"grid size must be even and >= 8, got {self.n}")

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n) / self.n

    @property
    def weight(self) -> float:
        """Periodic trapezoid weight ``2*pi/n``."""
        return 2.0 * np.pi / self.n

    def integrate(self, values) -> float:
        return float(self.weight * np.sum(values))


@dataclass(frozen=True)
class HarmonicSpectrum:
    """``h(theta) = a0 + sum_k c_k cos(k theta) + s_k sin(k theta)``, k even."""

    a0: float
    terms: tuple[tuple[int, float, float], ...] = ()

    def __post_init__(self):
        if not self.a0 > 0:
            raise ValueError(f"a0 must be positive, got {self.a0}")
        for k, _, _ in self.terms:
            if k < 2 or k % 2:
                raise ValueError(
                    f"only even frequencies >= 2 are allowed (origin symmetry), got k={k}")

    @classmethod
    def from_terms(cls, a0, terms) -> "HarmonicSpectrum":
        """Build from ``(k, c, s)`` triples, merging repeated frequencies."""
        acc: dict[int, list[float]] = {}
        for k, c, s in terms:
            k = int(k)
            slot = acc.setdefault(k, [0.0, 0.0])
            slot[0] += float(c)
            slot[1] += float(s)
        merged = tuple((k, c, s) for k, (c, s) in sorted(acc.items()))
        return cls(float(a0), merged)

    @property
    def max_frequency(self) -> int:
        return max((k for k, _, _ in self.terms), default=0)

    def scaled(self, c: float) -> "HarmonicSpectrum":
        return HarmonicSpectrum(self.a0 * c, tuple((k, c * ck, c * sk) for k, ck, sk in self.terms))

    def __add__(self, other: "HarmonicSpectrum") -> "HarmonicSpectrum":
        return HarmonicSpectrum.from_terms(self.a0 + other.a0, self.terms + other.terms)

    def synthesize(self, n: int, derivative: int = 0) -> np.ndarray:
        """Evaluate the ``derivative``-th (0 or 2) derivative on the n-point grid."""
        m = n // 2
        j = np.arange(m)
        out = np.full(m, self.a0 if derivative == 0 else 0.0)
        for k, c, s in self.terms:
            # integer argument reduction keeps cos(k theta_j) accurate for large k
            phase = 2.0 * np.pi * ((k * j) % n) / n
            factor = 1.0 if derivative == 0 else -float(k * k)
            out = out + factor * (c * np.cos(phase) + s * np.sin(phase))
        return np.concatenate([out, out])

    def to_dict(self) -> dict:
        return {
            "type": "harmonics",
            "a0": self.a0,
            "terms": [{"k": k, "cos": c, "sin": s} for k, c, s in self.terms],
        }


@dataclass(frozen=True)
class ValidationReport:
    positive_ok: bool
    convex_ok: bool
    symmetric_ok: bool
    min_h: float
    min_radius_of_curvature: float
    max_asymmetry: float

    @property
    def ok(self) -> bool:
        return self.positive_ok and self.convex_ok and self.symmetric_ok

    def to_dict(self) -> dict:
        return {
            "positive_ok": self.positive_ok,
            "convex_ok": self.convex_ok,
            "symmetric_ok": self.symmetric_ok,
            "min_h": self.min_h,
            "min_radius_of_curvature": self.min_radius_of_curvature,
            "max_asymmetry": self.max_asymmetry,
        }


@dataclass(frozen=True, eq=False)
class ConvexBody:
    grid: AngleGrid
    h: np.ndarray = field(repr=False)
    hpp: np.ndarray = field(repr=False)
    spectrum: HarmonicSpectrum

    def __post_init__(self):
        for name in ("h", "hpp"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (self.grid.n,):
                raise ValueError(f"{name} must have shape ({self.grid.n},), got {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def theta(self) -> np.ndarray:
        return self.grid.theta

    @property
    def rho(self) -> np.ndarray:
        """Radius of curvature ``h + h''`` (reciprocal curvature)."""
        return self.h + self.hpp

    @property
    def scale_length(self) -> float:
        return self.spectrum.a0


def _check_grid(n) -> AngleGrid:
    return n if isinstance(n, AngleGrid) else AngleGrid(n)


def _same_grid(K: ConvexBody, L: ConvexBody) -> None:
    if K.grid != L.grid:
        raise GridMismatchError(f"bodies live on different grids (n={K.n} vs n={L.n})")


def validate(K: ConvexBody) -> ValidationReport:
    """Check positivity, strict convexity and origin symmetry; never raises."""
    m = K.n // 2
    rho = K.rho
    asym = float(np.max(np.abs(K.h[:m] - K.h[m:])))
    scale = K.spectrum.a0
    return ValidationReport(
        positive_ok=bool(np.min(K.h) > 0),
        convex_ok=bool(np.min(rho) > CONVEXITY_TOL * scale),
        symmetric_ok=bool(asym <= 1e-12 * float(np.max(np.abs(K.h)))),
        min_h=float(np.min(K.h)),
        min_radius_of_curvature=float(np.min(rho)),
        max_asymmetry=asym,
    )


def _checked(K: ConvexBody, check: bool) -> ConvexBody:
    if check:
        report = validate(K)
        if not report.ok:
            raise InvalidBodyError(
                f"body is not a valid origin-symmetric strictly convex body: {report.to_dict()}",
                report)
    return K


def make_disk(r: float, n: int = DEFAULT_N) -> ConvexBody:
    if not r > 0:
        raise ValueError(f"disk radius must be positive, got {r}")
    grid = _check_grid(n)
    return ConvexBody(grid, np.full(grid.n, float(r)), np.zeros(grid.n), HarmonicSpectrum(float(r)))


def fit_spectrum(samples, n: int | None = None, cutoff: float = 1e-15) -> HarmonicSpectrum:
    """Even-harmonic interpolant of symmetric samples via a half-grid DFT.

    The first ``n/2`` samples are a full period of a pi-periodic function,
    so frequency ``p`` on the half grid is ``k = 2p`` on the circle.
    Coefficients below ``cutoff * a0`` are rounding noise and are dropped;
    left in, the ``-k**2`` factor would amplify them into ``h''``.
    """
    samples = np.asarray(samples, dtype=float)
    n = samples.size if n is None else n
    m = n // 2
    return spectrum_from_half_dft(np.fft.rfft(samples[:m]), m, cutoff)


def spectrum_from_half_dft(X: np.ndarray, m: int, cutoff: float = 1e-15) -> HarmonicSpectrum:
    """Convert ``rfft`` output of ``m`` half-grid samples to a spectrum."""
    a0 = float(X[0].real / m)
    terms = []
    for p in range(1, X.size):
        if 2 * p == m:
            c, s = X[p].real / m, 0.0
        else:
            c, s = 2.0 * X[p].real / m, -2.0 * X[p].imag / m
        if max(abs(c), abs(s)) > cutoff * abs(a0):
            terms.append((2 * p, float(c), float(s)))
    return HarmonicSpectrum(a0, tuple(terms))


def from_samples(h, check: bool = True) -> ConvexBody:
    """Body from symmetric support samples; ``h''`` comes from the fitted spectrum."""
    h = np.asarray(h, dtype=float)
    grid = AngleGrid(h.size)
    m = grid.n // 2
    if np.any(h[:m] != h[m:]):
        scale = float(np.max(np.abs(h)))
        if np.max(np.abs(h[:m] - h[m:])) > 1e-10 * scale:
            raise InvalidBodyError("samples are not origin-symmetric")
        h = np.concatenate([h[:m], h[:m]])
    spectrum = fit_spectrum(h)
    return _checked(ConvexBody(grid, h, spectrum.synthesize(grid.n, 2), spectrum), check)


def make_ellipse(a: float, b: float, n: int = DEFAULT_N) -> ConvexBody:
    """Ellipse with semi-axes ``a`` (along theta=0) and ``b``."""
    if not (a > 0 and b > 0):
        raise ValueError(f"ellipse axes must be positive, got a={a}, b={b}")
    if a == b:
        return make_disk(a, n)
    grid = _check_grid(n)
    m = grid.n // 2
    t = grid.theta[:m]
    half = np.sqrt((a * np.cos(t)) ** 2 + (b * np.sin(t)) ** 2)
    return from_samples(np.concatenate([half, half]))


def from_harmonics(spec: HarmonicSpectrum, n: int = DEFAULT_N, check: bool = True) -> ConvexBody:
    """Synthesize a body from an even-harmonic spectrum.

    ``check=False`` skips validation so that rejected shapes can still be
    inspected with :func:`validate`.
    """
    grid = _check_grid(n)
    if spec.max_frequency > grid.n // 2:
        raise ValueError(
            f"frequency {spec.max_frequency} is not resolved on an n={grid.n} grid")
    for k, _, s in spec.terms:
        if 2 * k == grid.n and s != 0.0:
            raise ValueError("a sine term at the Nyquist frequency vanishes on the grid")
    K = ConvexBody(grid, spec.synthesize(grid.n, 0), spec.synthesize(grid.n, 2), spec)
    return _checked(K, check)


def minkowski_combine(K: ConvexBody, L: ConvexBody, lam: float) -> ConvexBody:
    """Support data of ``K + lam*L``."""
    _same_grid(K, L)
    if not lam >= 0:
        raise ValueError(f"lambda must be nonnegative, got {lam}")
    if lam == 0:
        return K
    return ConvexBody(K.grid, K.h + lam * L.h, K.hpp + lam * L.hpp,
                      K.spectrum + L.spectrum.scaled(lam))


def scale(K: ConvexBody, c: float) -> ConvexBody:
    if not c > 0:
        raise ValueError(f"scale factor must be positive, got {c}")
    if c == 1:
        return K
    return ConvexBody(K.grid, c * K.h, c * K.hpp, K.spectrum.scaled(c))


def random_symmetric_body(seed: int, k_max: int = 8, decay: float = 2.5,
                          n: int = DEFAULT_N) -> ConvexBody:
    """Seeded random body with ``a0 = 1`` and even harmonics up to ``k_max``.

    Coefficients are normal with standard deviation ``k**-decay``; the whole
    perturbation is halved until ``min(h + h'') > 0.05``.
    """
    if k_max < 2 or k_max % 2:
        raise ValueError(f"k_max must be even and >= 2, got {k_max}")
    if not decay > 1:
        raise ValueError(f"decay must exceed 1, got {decay}")
    grid = _check_grid(n)
    if k_max >= grid.n // 2:
        raise ValueError(f"k_max={k_max} too large for n={grid.n}")
    rng = np.random.default_rng(seed)
    return random_perturbation(rng, 1.0, k_max, decay, 1.0, grid)


def random_perturbation(rng: np.random.Generator, a0: float, k_max: int, decay: float,
                        amplitude: float, n=DEFAULT_N) -> ConvexBody:
    """Disk of support ``a0`` plus random even harmonics, convexified by halving."""
    grid = _check_grid(n)
    ks = np.arange(2, k_max + 1, 2)
    coeffs = rng.normal(size=(ks.size, 2)) * (amplitude * a0 * ks.astype(float) ** -decay)[:, None]
    while True:
        spec = HarmonicSpectrum(a0, tuple((int(k), float(c), float(s))
                                          for k, (c, s) in zip(ks, coeffs)))
        K = from_harmonics(spec, grid, check=False)
        if np.min(K.rho) > 0.05 * a0:
            return _checked(K, True)
        coeffs = coeffs / 2.0


def second_derivative(samples: Sequence[float], n: int | None = None) -> np.ndarray:
    """Spectral second derivative of periodic samples on the uniform grid."""
    v = np.asarray(samples, dtype=float)
    if v.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    if n is not None and v.size != n:
        raise ValueError(f"expected {n} samples, got {v.size}")
    if v.size < 2:
        raise ValueError("need at least two samples")
    k = np.arange(v.size // 2 + 1)
    return np.fft.irfft(-(k ** 2) * np.fft.rfft(v), n=v.size)


def second_derivative_matrix(n: int) -> np.ndarray:
    """Dense matrix of :func:`second_derivative` on an n-point grid."""
    return second_derivative_columns(np.eye(n))


def second_derivative_columns(V: np.ndarray) -> np.ndarray:
    n = V.shape[0]
    k = np.arange(n // 2 + 1)
    return np.fft.irfft(-(k ** 2)[:, None] * np.fft.rfft(V, axis=0), n=n, axis=0)
