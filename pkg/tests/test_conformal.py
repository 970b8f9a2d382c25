import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compop.symbols import conformal

EPS = 0.25


def _interior(n, seed=0):
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0, 0.999 ** 2, n))
    return r * np.exp(1j * rng.uniform(-np.pi, np.pi, n))


def test_corner_at_one():
    assert abs(conformal.to_half_disk(1 - 1e-12, EPS)) < 1e-6
    assert conformal.boundary_half_disk(np.array([1e-300]), EPS)[0] == pytest.approx(0, abs=1e-290)


def test_forward_inverse_identity():
    z = _interior(10_000)
    back = conformal.from_half_disk(conformal.to_half_disk(z, EPS), EPS)
    assert np.max(np.abs(back - z)) <= 1e-10


def test_image_in_half_disk():
    g = conformal.to_half_disk(_interior(10_000, 1), EPS)
    assert np.all(g.real > 0) and np.all(np.abs(g) < EPS)


def test_boundary_on_edge_of_half_disk():
    t = np.linspace(-np.pi, np.pi, 10_001)
    t = t[t != 0]
    g = conformal.boundary_half_disk(t, EPS)
    dist = np.minimum(np.abs(g.real), np.abs(np.abs(g) - EPS))
    assert np.max(dist) <= 1e-8
    assert np.all(g.real >= -1e-15) and np.all(np.abs(g) <= EPS * (1 + 1e-12))


def test_boundary_agrees_with_radial_limit():
    t = np.array([-2.5, -0.3, 0.01, 0.7, 2.0])
    inner = conformal.to_half_disk((1 - 1e-10) * np.exp(1j * t), EPS)
    assert np.max(np.abs(inner - conformal.boundary_half_disk(t, EPS))) <= 1e-6


def test_derivative_at_corner():
    d = 1e-7
    # g(1 - d) ~ -g'(1) d
    assert (conformal.to_half_disk(1 - d, EPS) / d).real == pytest.approx(EPS / 4, rel=1e-5)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.99), st.floats(-np.pi, np.pi), st.floats(0.01, 0.9))
def test_round_trip_property(r, a, eps):
    z = r * np.exp(1j * a)
    assert abs(conformal.from_half_disk(conformal.to_half_disk(z, eps), eps) - z) <= 1e-10
