"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""
import csv
import io
import json
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from compop import carleson, orlicz
from compop.experiments import ExperimentConfig, run_experiment
from compop.orlicz import Outcome
from compop.symbols import fourier_coefficients, general_symbol, hilbert_periodic, identity_symbol
from compop.symbols.fourier import conjugate_grid

RESULTS = {}


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def summary_rows(files):
    return {r["quantity"]: r for r in csv.DictReader(io.StringIO(files["summary.csv"]))}


def row_ok(rows, quantity):
    return quantity in rows and rows[quantity]["pass"] == "pass"


def test_criterion_1_identity_oracle():
    t0 = time.perf_counter()
    sample = carleson.sample_boundary(identity_symbol(), 2 ** 20)
    h = np.geomspace(1e-3, 0.3, 40)
    prof = carleson.rho_profile(sample, h)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.abs(prof.rho / (h / math.pi) - 1)))
    report(1, err <= 0.02 and elapsed < 10, f"max rel err {err:.2e} (<= 0.02), {elapsed:.1f} s (< 10 s)")


def test_criterion_2_lens(tmp_path):
    files, _ = run_experiment(ExperimentConfig("lens", out=str(tmp_path)))
    rows = summary_rows(files)
    need = ["rho slope", "luecking(p=2) tail ratio"] + [f"schatten_decay(p={p})" for p in ("0.5", "1", "2")]
    ok = all(row_ok(rows, q) for q in need)
    report(2, ok, f"slope {rows['rho slope']['observed']} (2 +- 0.1), "
                  f"tail ratio {rows['luecking(p=2) tail ratio']['observed']} (<= 0.55), "
                  f"schatten 0.5/1/2 {'/'.join(rows[f'schatten_decay(p={p})']['observed'] for p in ('0.5', '1', '2'))}")


def test_criterion_3_phi_theta(tmp_path):
    files, _ = run_experiment(ExperimentConfig("phi-theta", theta=2.0, out=str(tmp_path)))
    rows = summary_rows(files)
    cfg = json.loads(files["config.json"])["config"]
    decades = math.log10(cfg["h_max"] / cfg["h_min"])
    need = ["corrected slope", "rho (log 1/h)^theta / h band", "schatten_decay(p=0.5)", "schatten_decay(p=4)"]
    ok = all(row_ok(rows, q) for q in need) and decades >= 3 - 1e-9
    report(3, ok, f"corrected slope {rows['corrected slope']['observed']} (1 +- 0.1), "
                  f"band {rows['rho (log 1/h)^theta / h band']['observed']} over {decades:g} decades (<= 10), "
                  f"schatten p=0.5 {rows['schatten_decay(p=0.5)']['observed']}, "
                  f"p=4 {rows['schatten_decay(p=4)']['observed']}")


def test_criterion_4_general_construction(tmp_path, exp_x_witness):
    t0 = time.perf_counter()
    files, _ = run_experiment(ExperimentConfig("thm-noncompact", psi="exp_x", n_points=2 ** 22, out=str(tmp_path)))
    elapsed = time.perf_counter() - t0
    prof = list(csv.DictReader(io.StringIO(files["profile.csv"])))
    h = np.array([float(r["h"]) for r in prof])
    rho = np.array([float(r["rho"]) for r in prof])
    in_range = (h >= 1e-4 * (1 - 1e-12)) & (h <= 1e-1 * (1 + 1e-12))
    decreasing = bool(np.all(np.diff(rho[in_range] / h[in_range]) > 0)) and in_range.sum() >= 8
    wit = next(v for v in json.loads(files["verdicts.json"]) if v["criterion"] == "witness_lower_bound")
    ev = np.array(wit["evidence"])
    feasible = ev[:, 0] >= 1e-6
    min_ratio = float(ev[feasible, 1].min()) / 0.01 if feasible.any() else float("nan")
    w = exp_x_witness[1]
    expected = int(((w.h >= 1e-6) & (w.h < 1)).sum())
    ok = decreasing and feasible.sum() == expected >= 1 and min_ratio >= 1.0 and elapsed < 60
    report(4, ok, f"rho/h decreasing toward 0 on [1e-4, 1e-1]: {decreasing}; "
                  f"min rho(h_n)/(0.01 c_n h_n) = {min_ratio:.1f} over {int(feasible.sum())} of {expected} indices; "
                  f"{elapsed:.1f} s (< 60 s)")


CATALOG = [orlicz.power(2), orlicz.exp_x(), orlicz.exp_log_power(2), orlicz.log_exponent("loglog"),
           orlicz.log_exponent("logloglog"), orlicz.explicit_product()]
CONDITIONS = ["Delta2", "DeltaSup2:2", "DeltaSup1:2", "SlowGrowth:0.5", "ThetaCondition:2,1"]
# derived by hand from the definitions
TRUTH = ["HFFHH", "FHHFF", "FFHFF", "FFFFF", "FFFHH", "FFFHH"]


def test_criterion_5_orlicz_table():
    sym = {Outcome.HOLDS: "H", Outcome.FAILS: "F"}
    got = ["".join(sym.get(orlicz.check_condition(psi, c).holds, "?") for c in CONDITIONS) for psi in CATALOG]
    mismatched = sum(a != b for g, t in zip(got, TRUTH) for a, b in zip(g, t))
    inconclusive = sum(row.count("?") for row in got)
    report(5, mismatched == 0 and inconclusive == 0,
           f"{mismatched} mismatched and {inconclusive} inconclusive of 30 cells")


def test_criterion_6_corollary(tmp_path):
    psi = orlicz.build_critere_orlicz(8)
    chain = []
    for k in range(4, 8):
        lk = math.lgamma(k + 1)
        L = float(psi.log_psi(lk))
        lhs, mid, rhs = float(psi.log_psi(math.log(3) + lk)), math.log(k) + 3 * lk, L + 0.5 * math.log(L)
        chain.append(lhs >= mid - 1e-12 and mid > rhs)
    files, _ = run_experiment(ExperimentConfig("corollary", theta=0.5, psi="critere:8", out=str(tmp_path)))
    rows = summary_rows(files)
    ok = all(chain) and row_ok(rows, "hpsi_compactness") and row_ok(rows, "maccluer_h2")
    report(6, ok, f"inequality chain k=4..7: {sum(chain)}/4; hpsi {rows['hpsi_compactness']['observed']} "
                  f"(fails); maccluer {rows['maccluer_h2']['observed']} (holds)")


def test_criterion_7_conjugate_series(exp_x_profile):
    f = exp_x_profile
    series = fourier_coefficients(f, 4096)
    m = 8 * 4096
    t = 2 * np.pi * np.arange(m) / m
    inv = float(np.max(np.abs(hilbert_periodic(conjugate_grid(series, m)) + (f(t) - series.a[0]))))
    a = series.a
    lhs = a[0] ** 2 + 0.5 * np.sum(a[1:] ** 2)
    knots = sorted(set(np.concatenate([f.c_knots, [math.pi / 2]])))
    rhs = sum(quad(lambda s: f(s) ** 2, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
              for lo, hi in zip([0.0] + knots[:-1], knots)) / math.pi
    parseval = abs(lhs - rhs)
    report(7, inv <= 1e-6 and parseval <= 1e-8, f"involution sup err {inv:.2e} (<= 1e-6), "
                                                 f"Parseval err {parseval:.2e} (<= 1e-8)")


def test_criterion_8_boundary_modulus(exp_x_profile):
    sym = general_symbol(exp_x_profile)
    t = np.random.default_rng(8).uniform(-np.pi, np.pi, 10_000)
    t = t[np.abs(t) > 1e-9]
    dev = float(np.max(np.abs(np.abs(sym.boundary(t)) - np.exp(-exp_x_profile(t)))))
    report(8, dev <= 1e-9 and t.size >= 9_990, f"max | |phi*| - exp(-f) | = {dev:.2e} over {t.size} points (<= 1e-9)")


def test_criterion_9_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_experiment(ExperimentConfig("lens", out=str(a)))
    run_experiment(ExperimentConfig("lens", out=str(b)))
    names = sorted(p.name for p in a.iterdir())
    same = names == sorted(p.name for p in b.iterdir()) and all(
        (a / n).read_bytes() == (b / n).read_bytes() for n in names)
    report(9, same and len(names) >= 4, f"{len(names)} files byte-identical: {same}")


@pytest.fixture(scope="module", autouse=True)
def _publish():
    yield
    pytest.acceptance_lines = [RESULTS[k] for k in sorted(RESULTS)]
