import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compop import carleson
from compop.symbols import constant_symbol, identity_symbol, lens_symbol, phi_theta_symbol


@pytest.fixture(scope="module")
def lens_sample():
    return carleson.sample_boundary(lens_symbol(), 2 ** 20)


@pytest.fixture(scope="module")
def identity_sample():
    return carleson.sample_boundary(identity_symbol(), 2 ** 18)


def test_identity_values_on_circle_at_sample_angles(identity_sample):
    s = identity_sample
    assert np.allclose(s.log_modulus, 0.0, atol=0)
    assert np.allclose(s.values, np.exp(1j * s.t), atol=1e-14)


def test_constant_values():
    s = carleson.sample_boundary(constant_symbol(0.3 + 0.4j), 10_000, seed=3)
    assert np.allclose(s.values, 0.3 + 0.4j, atol=1e-15)


def test_same_seed_same_sample():
    a = carleson.sample_boundary(lens_symbol(), 20_000, seed=11)
    b = carleson.sample_boundary(lens_symbol(), 20_000, seed=11)
    assert np.array_equal(a.t, b.t) and np.array_equal(a.log_modulus, b.log_modulus)


def test_grid_weights_cover_circle(lens_sample):
    assert lens_sample.weight.sum() == pytest.approx(1.0, abs=1e-12)
    assert lens_sample.nodes.weight.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(lens_sample.nodes.t) > 0)


def test_too_few_points_rejected():
    with pytest.raises(ValueError):
        carleson.sample_boundary(identity_symbol(), 1000)


def test_identity_rho_cells(identity_sample):
    h = np.geomspace(1e-3, 0.3, 12)
    p = carleson.rho_profile(identity_sample, h)
    assert np.max(np.abs(p.rho * math.pi / h - 1)) <= 0.02


def test_identity_rho_points_random_sample():
    s = carleson.sample_boundary(identity_symbol(), 2 ** 20, seed=5)
    h = np.geomspace(1e-2, 0.3, 8)
    p = carleson.rho_profile(s, h, method="points")
    assert np.max(np.abs(p.rho * math.pi / h - 1)) <= 0.1


def test_points_and_cells_agree_on_lens(lens_sample):
    h = np.geomspace(1e-2, 1e-1, 5)
    a = carleson.rho_profile(lens_sample, h, method="points").rho
    b = carleson.rho_profile(lens_sample, h, method="cells").rho
    assert np.allclose(a, b, rtol=0.03)


def test_zero_symbol_has_zero_rho():
    s = carleson.sample_boundary(constant_symbol(0), 2 ** 14)
    assert np.all(carleson.rho_profile(s, [0.01, 0.1, 0.5]).rho == 0)


def test_height_below_floor_rejected(identity_sample):
    with pytest.raises(ValueError):
        carleson.rho_profile(identity_sample, [1e-6, 1e-2])


def test_refined_height_grid_agrees(lens_sample):
    coarse = carleson.rho_profile(lens_sample, np.geomspace(1e-3, 1e-1, 5))
    fine = carleson.rho_profile(lens_sample, np.geomspace(1e-3, 1e-1, 9))
    assert np.all(np.abs(fine.rho[::2] - coarse.rho) <= 3 * coarse.stderr + 1e-15)
    assert np.all(np.diff(fine.rho) > 0)


def test_doubling_angular_width_is_constant_equivalent(identity_sample):
    h = np.geomspace(1e-2, 0.3, 10)
    ratio = carleson.rho_profile(identity_sample, h, b=2.0).rho / carleson.rho_profile(identity_sample, h).rho
    assert np.all((ratio >= 1) & (ratio <= 3))


def test_stderr_scales_like_inverse_sqrt_n():
    errs = [carleson.rho_profile(carleson.sample_boundary(identity_symbol(), n), [0.01]).stderr[0]
            for n in (2 ** 18, 2 ** 20)]
    assert 1.0 <= errs[0] / errs[1] <= 4.0


def test_fit_exponent_synthetic():
    h = np.geomspace(1e-4, 1e-1, 20)
    p = carleson.CarlesonProfile(h, h ** 1.5, np.zeros(20), np.full(20, 50), np.ones(20, int), 10 ** 6, 1, 1)
    slope, r2 = carleson.fit_exponent(p)
    assert slope == pytest.approx(1.5, abs=1e-3) and r2 > 0.999999


def test_fit_exponent_identity(identity_sample):
    p = carleson.rho_profile(identity_sample, np.geomspace(1e-3, 0.3, 20))
    assert carleson.fit_exponent(p)[0] == pytest.approx(1.0, abs=0.05)


def test_fit_exponent_log_correction():
    pt = carleson.sample_boundary(phi_theta_symbol(2.0), 2 ** 18)
    p = carleson.rho_profile(pt, np.geomspace(1e-6, 1e-3, 16))
    assert carleson.fit_exponent(p, correction=2.0)[0] == pytest.approx(1.0, abs=0.1)


def test_fit_exponent_needs_points():
    h = np.geomspace(1e-3, 1e-1, 5)
    p = carleson.CarlesonProfile(h, h, np.zeros(5), np.full(5, 50), np.ones(5, int), 10 ** 6, 1, 1)
    with pytest.raises(ValueError):
        carleson.fit_exponent(p)


def test_dyadic_row_sums_match_annulus_count():
    # equal weights 1/n: row sums times n are exact sample counts
    n_pts = 2 ** 18
    s = carleson.sample_boundary(lens_symbol(), n_pts, seed=7)
    dm = carleson.dyadic_measures(s, 10)
    gap = -np.expm1(s.log_modulus)
    for n in range(1, 11):
        count = int(np.count_nonzero((gap > 0) & (gap <= 2.0 ** -n)))
        assert round(dm.row(n).sum() * n_pts) == count
        assert dm.row(n).sum() == pytest.approx(count / n_pts, rel=1e-9)
    assert dm.row(1).sum() <= 1


def test_dyadic_nesting(lens_sample):
    dm = carleson.dyadic_measures(lens_sample, 10)
    for n in range(1, 10):
        children = dm.row(n + 1).reshape(-1, 2).sum(axis=1)
        assert np.all(children <= dm.row(n) * (1 + 1e-12) + 1e-300)


def test_dyadic_lens_tracks_rho(lens_sample):
    dm = carleson.dyadic_measures(lens_sample, 10)
    for n in range(3, 11):
        top = dm.row(n).max()
        rho = carleson.rho_profile(lens_sample, [2.0 ** -n]).rho[0]
        assert rho / 4 <= top <= rho
        assert top * 4 ** n == pytest.approx(5.1, rel=0.3)


def test_dyadic_windows_fit_in_distorted_windows(lens_sample):
    dm = carleson.dyadic_measures(lens_sample, 10)
    for n in range(1, 11):
        h = min(2 * math.pi * 2.0 ** -n, 0.99)
        assert dm.row(n).max() <= carleson.rho_profile(lens_sample, [h]).rho[0] * (1 + 1e-9)


def test_dyadic_depth_limit():
    s = carleson.sample_boundary(identity_symbol(), 10_000)
    with pytest.raises(ValueError):
        carleson.dyadic_measures(s, 7)


def test_luecking_zero_measure():
    s = carleson.sample_boundary(constant_symbol(0), 2 ** 14)
    res = carleson.luecking_partial_sums(carleson.dyadic_measures(s, 6), 2.0)
    assert np.all(res.partial_sums == 0)


def test_luecking_lens_p2(lens_sample):
    res = carleson.luecking_partial_sums(carleson.dyadic_measures(lens_sample, 12), 2.0)
    assert res.verdict == "converging" and res.ratios[-1] <= 0.55
    assert np.all(res.level_terms <= 10 * 2.0 ** -np.arange(1, 13) * 2 ** 1)


def test_luecking_phi_theta_threshold():
    dm = carleson.dyadic_measures(carleson.sample_boundary(phi_theta_symbol(2.0), 2 ** 20), 12)
    assert carleson.luecking_partial_sums(dm, 4.0).verdict == "converging"
    assert carleson.luecking_partial_sums(dm, 1.0).verdict in ("diverging", "inconclusive")


def test_profile_csv_round_trip(identity_sample):
    p = carleson.rho_profile(identity_sample, np.geomspace(1e-2, 0.1, 3))
    rows = p.to_csv().strip().splitlines()
    assert rows[0] == "h,rho,stderr,n_points"
    assert float(rows[1].split(",")[1]) == p.rho[0]


@settings(max_examples=20, deadline=None)
@given(st.floats(0.002, 0.5))
def test_rho_monotone_in_height_property(h0):
    s = carleson.sample_boundary(identity_symbol(), 20_000)
    p = carleson.rho_profile(s, [h0, min(h0 * 1.5, 0.9)])
    assert p.rho[1] >= p.rho[0]
