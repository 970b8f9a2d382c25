import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compop import orlicz
from compop.symbols import (constant_symbol, f_theta, general_symbol, identity_symbol, lens_symbol,
                            outer_symbol, phi_theta_symbol)


@pytest.fixture(scope="module")
def general(exp_x_profile):
    return general_symbol(exp_x_profile)


def _random_t(n, seed=0):
    t = np.random.default_rng(seed).uniform(-np.pi, np.pi, n)
    return t[np.abs(t) > 1e-9]


def test_cayley_quotient_on_circle_is_imaginary():
    t = _random_t(10_000)
    z = np.exp(1j * t)
    q = (1 + z) / (1 - z)
    assert np.max(np.abs(q.real) / np.maximum(1, np.abs(q))) <= 1e-9
    assert np.allclose(q.imag, 1 / np.tan(t / 2), rtol=1e-9)


def test_general_boundary_modulus(general, exp_x_profile):
    t = _random_t(10_000, 1)
    dev = np.abs(np.abs(general.boundary(t)) - np.exp(-exp_x_profile(t)))
    assert dev.max() <= 1e-9


def test_general_interior_in_disk(general):
    rng = np.random.default_rng(2)
    z = np.sqrt(rng.uniform(0, 0.98, 10_000)) * np.exp(1j * rng.uniform(-np.pi, np.pi, 10_000))
    assert np.all(np.abs(general(z)) < 1)


def test_general_interior_approaches_boundary(general):
    t = np.array([0.5, 1.5, -2.0])
    inner = general((1 - 1e-4) * np.exp(1j * t))
    assert np.max(np.abs(inner - general.boundary(t))) <= 5e-3


def test_general_excludes_singular_point(general):
    with pytest.raises(ValueError):
        general.boundary(np.array([0.0]))


def test_general_diagnostics(general):
    d = general.diagnostics
    assert d["tail_bound"] < 1e-6 and d["max_t2_dHf"] < 1e-2


def test_phi_theta_corner_and_modulus():
    s = phi_theta_symbol(2.0)
    assert abs(s(1 - 1e-12)) == pytest.approx(1.0, abs=1e-4)
    t = _random_t(10_000)
    assert np.all(np.abs(s.boundary(t)) < 1)


def test_phi_theta_eps_range():
    with pytest.raises(ValueError):
        phi_theta_symbol(2.0, eps=0.5)
    with pytest.raises(ValueError):
        phi_theta_symbol(-1.0)


def test_f_theta_positive_real_part_on_half_disk():
    theta = 2.0
    eps = math.exp(-2 * theta)
    rng = np.random.default_rng(3)
    v = eps * np.sqrt(rng.uniform(0, 1, 5000)) * np.exp(1j * rng.uniform(-np.pi / 2, np.pi / 2, 5000))
    assert np.all(f_theta(v, theta).real > 0)


def test_lens_diameter_identity():
    t = np.geomspace(1e-6, 0.2, 50)
    f = np.sqrt(1j * t)
    assert np.allclose(f.real, np.sqrt(t / 2), rtol=1e-12)
    assert np.allclose(f.imag, np.sqrt(t / 2), rtol=1e-12)


def test_lens_sup_tends_to_one():
    s = lens_symbol()
    sups = [np.abs(s.boundary(-np.pi + 2 * np.pi * (np.arange(n) + 0.5) / n)).max() for n in (2 ** 8, 2 ** 12, 2 ** 16)]
    assert sups[0] < sups[1] < sups[2] < 1 and 1 - sups[2] < 0.01


@pytest.mark.parametrize("make", [identity_symbol, lambda: constant_symbol(0.3 - 0.2j), lens_symbol,
                                  lambda: phi_theta_symbol(2.0), lambda: phi_theta_symbol(0.5)])
def test_boundary_modulus_at_most_one(make):
    s = make()
    t = _random_t(10 ** 6, 4)
    assert np.abs(s.boundary(t)).max() <= 1 + 1e-12


def test_general_boundary_modulus_at_most_one(general):
    t = _random_t(10 ** 6, 5)
    assert np.abs(general.boundary(t)).max() <= 1 + 1e-12


def test_constant_symbol():
    s = constant_symbol(0.5j)
    assert np.allclose(s.boundary(np.linspace(0, 1, 5)), 0.5j)
    with pytest.raises(ValueError):
        constant_symbol(1.0)


def test_outer_modulus_matches_prescription():
    psi = orlicz.exp_x()
    m = 512
    t = 2 * np.pi * np.arange(m) / m
    a = 2.0 + np.abs(np.sin(3 * t))
    s = outer_symbol(a, psi)
    h = 1 - 1 / psi(a)
    assert np.allclose(np.abs(s.boundary(t)), h, rtol=1e-12)


def test_outer_constant_data():
    psi = orlicz.exp_x()
    a = np.full(64, float(psi.inverse(4.0)))
    s = outer_symbol(a, psi)
    assert abs(s(0.0)) == pytest.approx(0.75, rel=1e-12)


def test_outer_mean_value_identity():
    psi = orlicz.power(2)
    m = 256
    t = 2 * np.pi * np.arange(m) / m
    a = 1.5 + np.cos(t) ** 2
    s = outer_symbol(a, psi)
    log_h = np.log1p(-1 / psi(a))
    assert s(0.0) == pytest.approx(np.exp(np.mean(log_h)), rel=1e-12)


def test_outer_rejects_small_data_and_warns_on_overflow():
    psi = orlicz.exp_x()
    with pytest.raises(ValueError):
        outer_symbol(np.full(32, 0.1), psi)
    a = np.full(32, 2.0)
    a[0] = 400.0
    with pytest.warns(RuntimeWarning):
        outer_symbol(a, psi)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 3.0))
def test_phi_theta_boundary_inside_disk_property(theta):
    s = phi_theta_symbol(theta)
    t = np.linspace(-np.pi, np.pi, 2001)
    t = t[t != 0]
    assert np.all(np.abs(s.boundary(t)) < 1)
