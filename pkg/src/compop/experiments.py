"""Reproducible experiment bundles for the four headline constructions.

A bundle is a dict ``{file name: text}`` written under the output directory:
``config.json``, ``profile.csv``, ``dyadic.csv``, ``verdicts.json`` and
``summary.csv``.  Nothing time- or host-dependent enters a bundle, so
identical configs give byte-identical files.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import __version__, carleson, criteria, orlicz
from .orlicz import Outcome
from .specs import SpecError, parse_orlicz, parse_symbol, witness_profile
from .symbols import general_symbol

EXPERIMENTS = ("thm-noncompact", "lens", "phi-theta", "corollary", "custom")

DEFAULTS = {
    "lens": dict(symbol="lens", n_points=2 ** 20, h_min=1e-4, h_max=1e-1, depth=12, p_list=(0.5, 1.0, 2.0)),
    "phi-theta": dict(symbol="phi-theta", theta=2.0, n_points=2 ** 20, h_min=1e-6, h_max=1e-3, depth=12,
                      p_list=(0.5, 1.0, 4.0)),
    "thm-noncompact": dict(symbol="general", psi="exp_x", n_points=2 ** 22, h_min=1e-4, h_max=1e-1, depth=12,
                           p_list=(2.0,)),
    "corollary": dict(symbol="phi-theta", theta=0.5, psi="critere:8", n_points=2 ** 20, h_min=1e-12,
                      h_max=1e-2, h_points=60, depth=12, p_list=(16.0,)),
    "custom": dict(symbol="identity", n_points=2 ** 20, h_min=1e-3, h_max=0.3, depth=10, p_list=(2.0,)),
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str
    symbol: str | None = None
    psi: str | None = None
    theta: float | None = None
    n_points: int | None = None
    seed: str = "grid"
    h_min: float | None = None
    h_max: float | None = None
    h_points: int = 40
    depth: int | None = None
    p_list: tuple = ()
    A_grid: tuple = criteria.DEFAULT_A_GRID
    out: str | None = None

    def resolved(self) -> "ExperimentConfig":
        """Fill unset fields from the experiment defaults and validate."""
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        base = DEFAULTS[self.experiment]
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        for k, v in base.items():
            if vals.get(k) in (None, ()):
                vals[k] = v
        if self.experiment in ("phi-theta", "corollary") and vals["theta"] is None:
            vals["theta"] = base["theta"]
        cfg = ExperimentConfig(**vals)
        cfg.p_list = tuple(float(p) for p in cfg.p_list)
        cfg.A_grid = tuple(float(a) for a in cfg.A_grid)
        cfg._validate()
        return cfg

    def _validate(self):
        if self.n_points < 10_000 or self.n_points % 2:
            raise ConfigError("n_points must be an even number >= 1e4")
        if not 0 < self.h_min < self.h_max < 1:
            raise ConfigError("need 0 < h_min < h_max < 1")
        if self.h_points < 8:
            raise ConfigError("h_points must be >= 8")
        if 2 ** self.depth > self.n_points / 100:
            raise ConfigError(f"depth {self.depth} too deep for n_points {self.n_points}")
        if self.seed != "grid":
            try:
                int(self.seed)
            except ValueError:
                raise ConfigError("seed must be 'grid' or an integer")
        if self.experiment == "corollary" and not 0 < self.theta < 1:
            raise ConfigError("the corollary experiment needs 0 < theta < 1")
        try:
            if self.psi:
                parse_orlicz(self.psi)
        except SpecError as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p_list"] = list(self.p_list)
        d["A_grid"] = list(self.A_grid)
        d.pop("out")
        return d


_KEY_TYPES = {"n_points": int, "h_points": int, "depth": int, "theta": float, "h_min": float, "h_max": float}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` text; ``#`` starts a comment; lists are comma separated."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"bad config line: {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        if k in ("p_list", "p", "A_grid"):
            out["A_grid" if k == "A_grid" else "p_list"] = tuple(float(x) for x in v.split(",") if x.strip())
        elif k in ("n", "n_points"):
            out["n_points"] = int(float(v))
        elif k in _KEY_TYPES:
            out[k] = _KEY_TYPES[k](float(v)) if _KEY_TYPES[k] is int else _KEY_TYPES[k](v)
        elif k in ("experiment", "symbol", "psi", "seed", "out"):
            out[k] = v
        else:
            raise ConfigError(f"unknown config key {k!r}")
    return out


# ---------------------------------------------------------------------------
class _Checks:
    def __init__(self):
        self.rows = []

    def add(self, name, predicted, observed, ok):
        self.rows.append((name, str(predicted), _fmt(observed), bool(ok)))

    @property
    def passed(self):
        return all(r[3] for r in self.rows)

    def csv(self):
        buf = io.StringIO()
        buf.write("quantity,predicted,observed,pass\n")
        for r in self.rows:
            buf.write(",".join([r[0], r[1], r[2], "pass" if r[3] else "FAIL"]) + "\n")
        return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v).replace(",", ";")


def _build_symbol(cfg: ExperimentConfig):
    psi = parse_orlicz(cfg.psi) if cfg.psi else None
    extra = {}
    if cfg.experiment == "thm-noncompact":
        prof, w = witness_profile(psi)
        extra["witness"] = w
        return general_symbol(prof), psi, extra
    spec = cfg.symbol
    if spec in ("phi-theta", "phi_theta"):
        spec = f"phi-theta:{cfg.theta}"
    return parse_symbol(spec, psi), psi, extra


def run_experiment(cfg: ExperimentConfig):
    """Run one experiment; returns ``(files, passed)``."""
    cfg = cfg.resolved()
    symbol, psi, extra = _build_symbol(cfg)
    if not symbol.touch_points and cfg.h_min <= 10.0 / cfg.n_points:
        raise ConfigError("h_min below the resolution floor 10 / n_points")
    seed = cfg.seed if cfg.seed == "grid" else int(cfg.seed)
    sample = carleson.sample_boundary(symbol, cfg.n_points, seed)
    h = np.geomspace(cfg.h_min, cfg.h_max, cfg.h_points)
    method = "cells" if sample.nodes is not None else "points"
    extra_h = np.array([])
    if cfg.experiment == "thm-noncompact":
        # witness heights ride along in the same pass over the sample
        w = extra["witness"]
        floor = carleson.resolution_floor(sample)
        extra["sel"] = sel = (w.h >= 1e-6) & (w.h > floor) & (w.h < 1)
        extra_h = np.setdiff1d(w.h[sel], h)
    merged = carleson.rho_profile(sample, np.union1d(h, extra_h), method=method)
    profile = _subset(merged, np.isin(merged.h, h))
    dm = carleson.dyadic_measures(sample, cfg.depth)
    checks = _Checks()
    verdicts = []
    luecking = {}

    def verdict(v):
        verdicts.append(v.to_dict())
        return v

    mac = verdict(criteria.maccluer_h2(profile))
    for p in cfg.p_list:
        luecking[str(p)] = carleson.luecking_partial_sums(dm, p)

    exp = cfg.experiment
    if exp == "lens":
        slope, r2 = carleson.fit_exponent(profile)
        checks.add("rho slope", "2 +- 0.1", slope, abs(slope - 2) <= 0.1)
        checks.add("maccluer_h2", "holds", mac.holds.value, mac.holds == Outcome.HOLDS)
        a2 = verdict(criteria.alpha_carleson(profile, 2.0))
        checks.add("alpha_carleson(2)", "holds", a2.holds.value, a2.holds == Outcome.HOLDS)
        lk = luecking.setdefault("2.0", carleson.luecking_partial_sums(dm, 2.0))
        checks.add("luecking(p=2) verdict", "converging", lk.verdict, lk.verdict == "converging")
        checks.add("luecking(p=2) tail ratio", "<= 0.55", float(lk.ratios[-1]), lk.ratios[-1] <= 0.55)
        for p in (0.5, 1.0, 2.0):
            v = verdict(criteria.schatten_decay(profile, p))
            checks.add(f"schatten_decay(p={p:g})", "holds", v.holds.value, v.holds == Outcome.HOLDS)
        if psi is not None:
            verdict(criteria.hpsi_compactness(profile, psi, cfg.A_grid))
    elif exp == "phi-theta":
        th = cfg.theta
        slope, r2 = carleson.fit_exponent(profile, correction=th)
        checks.add("corrected slope", "1 +- 0.1", slope, abs(slope - 1) <= 0.1)
        band = profile.rho * np.log(1 / profile.h) ** th / profile.h
        band = band[profile.usable]
        checks.add("rho (log 1/h)^theta / h band", "<= 10", float(band.max() / band.min()),
                   band.max() / band.min() <= 10)
        checks.add("maccluer_h2", "holds", mac.holds.value, mac.holds == Outcome.HOLDS)
        for p in cfg.p_list:
            v = verdict(criteria.schatten_decay(profile, p))
            delta = 2.0 / p
            if delta >= 2 * th:
                checks.add(f"schatten_decay(p={p:g})", "fails", v.holds.value, v.holds == Outcome.FAILS)
            elif delta <= th / 2:
                checks.add(f"schatten_decay(p={p:g})", "holds", v.holds.value, v.holds == Outcome.HOLDS)
            lk = luecking[str(p)]
            if p > 4 / th:
                checks.add(f"luecking(p={p:g})", "converging", lk.verdict, lk.verdict == "converging")
        if psi is not None:
            verdict(criteria.hpsi_compactness(profile, psi, cfg.A_grid))
        elif th >= 1:
            for spec, want in (("logloglog", Outcome.HOLDS), ("loglog", Outcome.FAILS)):
                v = verdict(criteria.hpsi_compactness(profile, parse_orlicz(spec), cfg.A_grid))
                if th == 2:
                    checks.add(f"hpsi_compactness({spec})", want.value, v.holds.value, v.holds == want)
    elif exp == "thm-noncompact":
        w = extra["witness"]
        usable = profile.usable
        r = profile.rho[usable] / profile.h[usable]
        checks.add("rho/h strictly decreasing as h -> 0", "yes", bool(np.all(np.diff(r) > 0)),
                   np.all(np.diff(r) > 0) and usable.all())
        checks.add("maccluer_h2", "holds", mac.holds.value, mac.holds == Outcome.HOLDS)
        sel = extra["sel"]
        hn = np.sort(w.h[sel])
        cn = w.c[sel][np.argsort(w.h[sel])]
        at = _subset(merged, np.isin(merged.h, hn))
        ratio = at.rho / (cn * hn)
        checks.add("witness indices checked", ">= 1", int(sel.sum()), sel.sum() >= 1)
        checks.add("min rho(h_n) / (c_n h_n)", ">= 0.01", float(ratio.min()), ratio.min() >= 0.01)
        verdicts.append({"criterion": "witness_lower_bound", "holds": "holds" if ratio.min() >= 0.01 else "fails",
                         "params": {"psi": psi.label, "factor": 0.01},
                         "evidence": [[float(a), float(b)] for a, b in zip(hn, ratio)], "note": ""})
        verdict(criteria.hpsi_compactness(profile, psi, cfg.A_grid))
    elif exp == "corollary":
        for k in range(4, 8):
            kf = math.log(math.factorial(k))
            lhs = psi.log_psi(math.log(3.0) + kf)
            mid = math.log(k) + 3 * kf
            L = psi.log_psi(kf)
            rhs = L + cfg.theta * math.log(L)
            checks.add(f"log: Psi(3 {k}!) >= {k} ({k}!)^3 > Psi({k}!) log Psi({k}!)^theta", "yes",
                       f"{lhs:.4f} >= {mid:.4f} > {rhs:.4f}", lhs >= mid - 1e-12 and mid > rhs)
        hp = verdict(criteria.hpsi_compactness(profile, psi, cfg.A_grid))
        checks.add("hpsi_compactness", "fails", hp.holds.value, hp.holds == Outcome.FAILS)
        checks.add("maccluer_h2", "holds", mac.holds.value, mac.holds == Outcome.HOLDS)
        for p in cfg.p_list:
            v = verdict(criteria.schatten_decay(profile, p))
            if 2.0 / p <= cfg.theta / 2:
                checks.add(f"schatten_decay(p={p:g})", "holds", v.holds.value, v.holds == Outcome.HOLDS)
    else:
        for a in (1.0, 2.0):
            verdict(criteria.alpha_carleson(profile, a))
        for p in cfg.p_list:
            verdict(criteria.schatten_decay(profile, p))
        if psi is not None:
            verdict(criteria.hpsi_compactness(profile, psi, cfg.A_grid))

    try:
        slope, r2 = carleson.fit_exponent(profile)
    except ValueError:
        slope, r2 = math.nan, math.nan
    meta = {
        "version": __version__,
        "config": cfg.to_dict(),
        "symbol": {"kind": symbol.kind, "params": symbol.params, "diagnostics": symbol.diagnostics},
        "psi": psi.to_dict() if psi else None,
        "estimator": method,
        "sample_size": int(sample.size),
        "fitted_slope": slope,
        "fitted_r2": r2,
        "luecking": {k: v.to_dict() for k, v in sorted(luecking.items())},
        "passed": checks.passed,
    }
    files = {
        "config.json": _dump(meta),
        "profile.csv": profile.to_csv(),
        "dyadic.csv": dm.to_csv(),
        "verdicts.json": _dump(verdicts),
        "summary.csv": checks.csv(),
    }
    if cfg.out:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (outdir / name).write_text(text)
    return files, checks.passed


def _subset(profile, mask):
    return replace(profile, h=profile.h[mask], rho=profile.rho[mask], stderr=profile.stderr[mask],
                   counts=profile.counts[mask], n_centers=profile.n_centers[mask])


def _clean(o):
    if isinstance(o, dict):
        return {str(k): _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    if isinstance(o, (np.floating, float)):
        f = float(o)
        return f if math.isfinite(f) else repr(f)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    return o


def _dump(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=1) + "\n"
