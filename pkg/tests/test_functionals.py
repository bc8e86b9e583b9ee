import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from symconvex.body import (GridMismatchError, HarmonicSpectrum, InvalidBodyError,
                            from_harmonics, make_disk, make_ellipse,
                            minkowski_combine, random_symmetric_body, scale)
from symconvex.functionals import (area, cone_volume_density, curvature,
                                   curvature_entropy, mixed_cone_volume_density,
                                   mixed_volume, perimeter, steiner_coefficients,
                                   sum_curvature)

HARM = HarmonicSpectrum(1.0, ((2, 0.1, 0.0),))
ELLIPSE_PERIMETER = oracles.ellipse_perimeter(2.0, 1.0)

seeds = st.integers(min_value=1, max_value=10 ** 6)


def test_ellipse_perimeter_oracle_value():
    assert ELLIPSE_PERIMETER == pytest.approx(9.688448, abs=5e-7)
    assert oracles.circle_integral(oracles.ellipse_h(2, 1)) == pytest.approx(ELLIPSE_PERIMETER, rel=1e-12)


def test_perimeter(ellipse):
    assert perimeter(make_disk(1.0)) == pytest.approx(2 * math.pi, rel=1e-15)
    assert perimeter(from_harmonics(HARM)) == pytest.approx(2 * math.pi, rel=1e-14)
    assert perimeter(ellipse) == pytest.approx(ELLIPSE_PERIMETER, rel=1e-12)


def test_area(ellipse):
    for r in (0.5, 1.0, 3.0):
        assert area(make_disk(r)) == pytest.approx(math.pi * r * r, rel=1e-14)
    assert area(ellipse) == pytest.approx(2 * math.pi, rel=1e-12)
    assert area(from_harmonics(HARM)) == pytest.approx(math.pi * (1 - 0.015), rel=1e-12)
    assert area(from_harmonics(HARM)) == pytest.approx(
        oracles.area(oracles.harmonic_h(1, HARM.terms), oracles.harmonic_rho(1, HARM.terms)),
        rel=1e-12)


def test_mixed_volume_examples(ellipse, random_body):
    assert mixed_volume(ellipse, ellipse) == pytest.approx(area(ellipse), rel=1e-14)
    assert mixed_volume(ellipse, make_disk(1.0)) == pytest.approx(perimeter(ellipse) / 2, rel=1e-13)
    assert mixed_volume(scale(random_body, 2.5), random_body) == pytest.approx(
        2.5 * area(random_body), rel=1e-13)


def test_mixed_volume_oracle():
    K = random_symmetric_body(5)
    E = make_ellipse(2.0, 1.0)
    terms = K.spectrum.terms
    expected = oracles.mixed_volume(oracles.harmonic_h(1, terms), oracles.harmonic_rho(1, terms),
                                    oracles.ellipse_h(2, 1))
    assert mixed_volume(K, E) == pytest.approx(expected, rel=1e-11)


def test_mixed_volume_grid_mismatch(ellipse):
    with pytest.raises(GridMismatchError):
        mixed_volume(ellipse, make_disk(1.0, 128))


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_mixed_volume_symmetric(s, t):
    K, L = random_symmetric_body(s), random_symmetric_body(t)
    assert abs(mixed_volume(K, L) - mixed_volume(L, K)) <= 1e-11 * max(area(K), area(L))


def test_curvature(ellipse, random_body):
    assert np.allclose(curvature(make_disk(2.0)), 0.5, rtol=1e-15)
    assert curvature(ellipse)[0] == pytest.approx(2.0, rel=1e-10)
    assert np.allclose(curvature(scale(random_body, 3.0)), curvature(random_body) / 3.0,
                       rtol=1e-13, atol=0)


def test_curvature_rejects_nonconvex():
    K = from_harmonics(HarmonicSpectrum(1.0, ((2, 0.4, 0.0),)), check=False)
    with pytest.raises(InvalidBodyError):
        curvature(K)


def test_cone_volume_density(ellipse, random_body):
    d = cone_volume_density(make_disk(2.0))
    assert np.allclose(d.values, 2.0) and d.total == pytest.approx(4 * math.pi, rel=1e-14)
    for K in (ellipse, random_body):
        dens = cone_volume_density(K)
        assert dens.total == pytest.approx(area(K), rel=1e-12)
        assert dens.total == pytest.approx(2 * math.pi / K.n * np.sum(dens.values), rel=1e-15)
        assert np.all(dens.values > 0)
    assert cone_volume_density(ellipse).values[0] == pytest.approx(0.5, rel=1e-10)


def test_mixed_cone_volume_density(ellipse, random_body):
    same = mixed_cone_volume_density(random_body, random_body)
    assert np.array_equal(same.values, cone_volume_density(random_body).values)
    withdisk = mixed_cone_volume_density(ellipse, make_disk(1.0))
    assert np.allclose(withdisk.values, 0.5 * ellipse.rho, rtol=1e-15)
    assert withdisk.total == pytest.approx(perimeter(ellipse) / 2, rel=1e-13)
    D = make_disk(1.0)
    assert mixed_cone_volume_density(D, ellipse).total == pytest.approx(
        mixed_volume(D, ellipse), rel=1e-15)


def test_steiner_examples(ellipse, random_body):
    st_ = steiner_coefficients(make_disk(2.0), make_disk(3.0))
    pi = math.pi
    assert (st_.v0, st_.v1, st_.v2) == pytest.approx((4 * pi, 12 * pi, 9 * pi), rel=1e-14)
    V = area(random_body)
    st_ = steiner_coefficients(random_body, random_body)
    assert (st_.v0, st_.v1, st_.v2) == pytest.approx((V, 2 * V, V), rel=1e-13)
    assert steiner_coefficients(ellipse, make_disk(1.0)).v1 == pytest.approx(ELLIPSE_PERIMETER, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_steiner_quadratic(s, t):
    K, L = random_symmetric_body(s), random_symmetric_body(t)
    st_ = steiner_coefficients(K, L)
    for lam in (0.3, 1.0, 2.7):
        assert area(minkowski_combine(K, L, lam)) == pytest.approx(st_(lam), rel=1e-10)


def test_sum_curvature_examples(ellipse, random_body):
    kK, kL = curvature(random_body), curvature(ellipse)
    k, dk = sum_curvature(random_body, ellipse, 0.0)
    assert np.allclose(k, kK, rtol=1e-15, atol=0)
    assert np.allclose(dk, -kK ** 2 / kL, rtol=1e-14)
    k, _ = sum_curvature(random_body, random_body, 2.0)
    assert np.allclose(k, kK / 3.0, rtol=1e-14)
    k, dk = sum_curvature(make_disk(2.0), make_disk(3.0), 0.5)
    assert np.allclose(k, 1 / 3.5, rtol=1e-15) and np.allclose(dk, -3 / 3.5 ** 2, rtol=1e-14)
    with pytest.raises(ValueError):
        sum_curvature(ellipse, ellipse, -1.0)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds, st.floats(min_value=0.0, max_value=20.0))
def test_sum_curvature_closure(s, t, lam):
    K, L = random_symmetric_body(s), random_symmetric_body(t)
    k, dk = sum_curvature(K, L, lam)
    direct = curvature(minkowski_combine(K, L, lam))
    assert np.max(np.abs(k - direct) / direct) < 1e-10
    assert np.allclose(dk, -k * k / curvature(L), rtol=1e-13)


@pytest.mark.parametrize("lam", [0.2, 1.0, 4.0])
def test_sum_curvature_derivative_second_order(lam):
    K, L = random_symmetric_body(8), make_ellipse(2.0, 1.0)
    _, dk = sum_curvature(K, L, lam)

    def error(step):
        kp = curvature(minkowski_combine(K, L, lam + step))
        km = curvature(minkowski_combine(K, L, lam - step))
        return np.max(np.abs((kp - km) / (2 * step) - dk))

    e1, e2 = error(0.02), error(0.01)
    assert e1 / e2 >= 3.5


def test_curvature_entropy(ellipse, random_body):
    assert curvature_entropy(random_body, random_body) == 0.0
    for c in (0.5, 3.0):
        assert curvature_entropy(random_body, scale(random_body, c)) == pytest.approx(
            area(random_body) * math.log(c), rel=1e-10)
    rho = oracles.ellipse_rho(2, 1)
    expected = 0.5 * oracles.circle_integral(lambda t: math.log(rho(t)))
    value = curvature_entropy(make_disk(1.0), ellipse)
    assert value == pytest.approx(expected, rel=1e-10)
    assert value == pytest.approx(0.5337535658484, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_ratio_identities_against_mixed_measure(s, t):
    K, L = random_symmetric_body(s), random_symmetric_body(t)
    mixed = mixed_cone_volume_density(K, L)
    # curvature ratio against dV_L equals its square against 1/2 h_L dS_K
    lhs = cone_volume_density(L).integrate(L.rho / K.rho)
    rhs = mixed.integrate((L.rho / K.rho) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)
    lhs = cone_volume_density(K).integrate(K.h / L.h)
    rhs = mixed.integrate((K.h / L.h) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.floats(min_value=0.1, max_value=10.0))
def test_homogeneity(s, c):
    K = random_symmetric_body(s)
    assert perimeter(scale(K, c)) == pytest.approx(c * perimeter(K), rel=1e-10)
    assert area(scale(K, c)) == pytest.approx(c * c * area(K), rel=1e-10)
    assert curvature_entropy(K, scale(K, c)) == pytest.approx(area(K) * math.log(c),
                                                              rel=1e-10, abs=1e-12)
