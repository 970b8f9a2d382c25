"""``compop`` command line."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, carleson, orlicz
from .experiments import EXPERIMENTS, ConfigError, ExperimentConfig, read_config_file, run_experiment
from .specs import SpecError, parse_orlicz, parse_symbol


def _seed(text):
    return text if text == "grid" else int(text)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _symbol(args):
    psi = parse_orlicz(args.psi) if getattr(args, "psi", None) else None
    return parse_symbol(args.symbol, psi)


def cmd_orlicz_check(args):
    psi = parse_orlicz(args.psi)
    cond = orlicz.parse_condition(args.cond)
    v = orlicz.check_condition(psi, cond)
    print(json.dumps({"psi": psi.label, "condition": args.cond, "holds": v.holds.value, "note": v.note},
                     sort_keys=True))
    return 0


def cmd_symbol_build(args):
    sym = _symbol(args)
    t = np.linspace(-np.pi, np.pi, args.points, endpoint=False)
    if sym.excluded:
        t = t[np.abs(t) >= sym.excluded]
    lb = sym.log_boundary(t)
    lines = ["t,log_modulus,arg"] + [f"{a:.17g},{b.real:.17g},{b.imag:.17g}" for a, b in zip(t, lb)]
    _emit("\n".join(lines) + "\n", args.out)
    meta = {"kind": sym.kind, "params": sym.params, "touch_points": list(sym.touch_points),
            "diagnostics": sym.diagnostics}
    print(json.dumps(meta, sort_keys=True, default=float), file=sys.stderr)
    return 0


def _sample(args):
    return carleson.sample_boundary(_symbol(args), args.n, _seed(args.seed))


def cmd_rho(args):
    sample = _sample(args)
    floor = carleson.resolution_floor(sample)
    if args.hmin <= floor:
        raise ConfigError(f"--hmin {args.hmin:g} is below the resolution floor {floor:.3g}")
    h = np.geomspace(args.hmin, args.hmax, args.points)
    method = "cells" if sample.nodes is not None else "points"
    _emit(carleson.rho_profile(sample, h, method=method).to_csv(), args.out)
    return 0


def cmd_dyadic(args):
    dm = carleson.dyadic_measures(_sample(args), args.depth)
    _emit(dm.to_csv(), args.out)
    return 0


def cmd_luecking(args):
    dm = carleson.dyadic_measures(_sample(args), args.depth)
    res = [carleson.luecking_partial_sums(dm, p).to_dict() for p in args.p]
    _emit(json.dumps(res, sort_keys=True, indent=1) + "\n", args.out)
    return 0


def cmd_experiment(args):
    vals = read_config_file(args.config) if args.config else {}
    vals["experiment"] = args.id
    for key in ("psi", "theta", "symbol", "seed", "depth", "h_min", "h_max"):
        v = getattr(args, key, None)
        if v is not None:
            vals[key] = v
    if args.n is not None:
        vals["n_points"] = args.n
    vals["out"] = args.out
    files, ok = run_experiment(ExperimentConfig(**vals))
    sys.stdout.write(files["summary.csv"])
    if not ok:
        print("experiment assertions failed", file=sys.stderr)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="compop", description="Carleson-measure experiments for composition operators")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    o = sub.add_parser("orlicz", help="Orlicz growth conditions")
    osub = o.add_subparsers(dest="action", required=True)
    oc = osub.add_parser("check")
    oc.add_argument("--psi", required=True)
    oc.add_argument("--cond", required=True)
    oc.set_defaults(func=cmd_orlicz_check)

    s = sub.add_parser("symbol", help="symbol boundary values")
    ssub = s.add_subparsers(dest="action", required=True)
    sb = ssub.add_parser("build")
    sb.add_argument("symbol")
    sb.add_argument("--psi")
    sb.add_argument("--points", type=int, default=4096)
    sb.add_argument("--out")
    sb.set_defaults(func=cmd_symbol_build)

    def sampled(name, func):
        p = sub.add_parser(name)
        p.add_argument("--symbol", required=True)
        p.add_argument("--psi")
        p.add_argument("--n", type=int, default=2 ** 20)
        p.add_argument("--seed", default="grid")
        p.add_argument("--out")
        p.set_defaults(func=func)
        return p

    r = sampled("rho", cmd_rho)
    r.add_argument("--hmin", type=float, default=1e-4)
    r.add_argument("--hmax", type=float, default=0.5)
    r.add_argument("--points", type=int, default=40)
    d = sampled("dyadic", cmd_dyadic)
    d.add_argument("--depth", type=int, default=10)
    lk = sampled("luecking", cmd_luecking)
    lk.add_argument("--depth", type=int, default=10)
    lk.add_argument("--p", type=float, nargs="+", default=[2.0])

    e = sub.add_parser("experiment")
    e.add_argument("id", choices=EXPERIMENTS)
    e.add_argument("--psi")
    e.add_argument("--symbol")
    e.add_argument("--theta", type=float)
    e.add_argument("--n", type=int)
    e.add_argument("--seed")
    e.add_argument("--depth", type=int)
    e.add_argument("--hmin", dest="h_min", type=float)
    e.add_argument("--hmax", dest="h_max", type=float)
    e.add_argument("--config")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SpecError, orlicz.OrliczDomainError, ValueError) as exc:
        print(f"compop: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
