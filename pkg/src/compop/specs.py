"""Text specs for Orlicz functions and symbols, as used on the command line.

Orlicz: ``power:3``, ``exp_x``, ``exp_power:2``, ``exp_log_power:2``,
``loglog``, ``logloglog``, ``explicit_product``, ``critere:8``,
``piecewise:@file.csv``.

Symbols: ``identity``, ``const:0.5+0.1i``, ``lens[:eps]``,
``phi-theta:2.0[,eps]``, ``general:@profile.csv`` (columns h,c),
``general:exp_x`` (witness of the named Orlicz function),
``outer:@modulus.csv`` (one column a, equispaced on the circle).
"""
from __future__ import annotations

import csv
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import orlicz
from .symbols import (build_profile_from_sequences, constant_symbol, general_symbol, identity_symbol,
                      lens_symbol, outer_symbol, phi_theta_symbol)


class SpecError(ValueError):
    pass


def _read_csv(path: str, ncols: int):
    p = Path(path)
    if not p.exists():
        raise SpecError(f"no such file: {path}")
    rows = []
    with p.open(newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                rows.append([float(v) for v in row[:ncols]])
            except ValueError:
                if rows:
                    raise SpecError(f"{path}: non-numeric row {row}")
                continue  # header
    arr = np.array(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != ncols:
        raise SpecError(f"{path}: expected {ncols} numeric column(s)")
    return arr


def parse_orlicz(spec: str) -> orlicz.OrliczFunction:
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "power":
            return orlicz.power(float(arg))
        if name in ("exp_x", "exp"):
            return orlicz.exp_x()
        if name == "exp_power":
            return orlicz.exp_power(float(arg))
        if name == "exp_log_power":
            return orlicz.exp_log_power(float(arg))
        if name in ("loglog", "logloglog"):
            return orlicz.log_exponent(name)
        if name == "explicit_product":
            return orlicz.explicit_product()
        if name == "critere":
            return orlicz.build_critere_orlicz(int(arg or 8))
        if name == "piecewise":
            if not arg.startswith("@"):
                raise SpecError("piecewise needs @file.csv")
            data = _read_csv(arg[1:], 2)
            return orlicz.piecewise_convex(data[:, 0], data[:, 1], label=f"piecewise({Path(arg[1:]).name})")
    except (ValueError, TypeError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"bad Orlicz spec {spec!r}: {exc}") from exc
    raise SpecError(f"unknown Orlicz spec {spec!r}")


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise SpecError(f"bad complex number {text!r}") from exc


def witness_profile(psi: orlicz.OrliczFunction, h_min: float = 1e-12, n_max: int = 64):
    """Profile built from the Delta_2 witness of ``psi``."""
    w = orlicz.delta2_witness(psi, n_max, h_min=h_min)
    return build_profile_from_sequences(w.h, w.c), w


def parse_symbol(spec: str, psi: orlicz.OrliczFunction | None = None):
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "identity":
            return identity_symbol()
        if name in ("const", "constant"):
            return constant_symbol(parse_complex(arg or "0"))
        if name == "lens":
            return lens_symbol(float(arg)) if arg else lens_symbol()
        if name in ("phi-theta", "phi_theta"):
            parts = [float(v) for v in arg.split(",") if v]
            if not parts:
                raise SpecError("phi-theta needs theta")
            return phi_theta_symbol(*parts[:2])
        if name == "general":
            if arg.startswith("@"):
                data = _read_csv(arg[1:], 2)
                sym = general_symbol(build_profile_from_sequences(data[:, 0], data[:, 1]))
            else:
                sym = general_symbol(witness_profile(parse_orlicz(arg or "exp_x"))[0])
            return replace(sym, spec=spec)
        if name == "outer":
            if not arg.startswith("@"):
                raise SpecError("outer needs @modulus.csv")
            if psi is None:
                raise SpecError("outer symbol needs --psi")
            data = _read_csv(arg[1:], 1)
            return replace(outer_symbol(data[:, 0], psi), spec=spec)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"bad symbol spec {spec!r}: {exc}") from exc
    raise SpecError(f"unknown symbol spec {spec!r}")
