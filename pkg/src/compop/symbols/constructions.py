"""Analytic self-maps of the disk, exposed through their boundary values.

Every symbol evaluates ``log phi*(e^{it})`` as a complex number: the real part
is ``log|phi*|`` and the imaginary part an argument.  Working with the log
keeps ``1 - |phi*|`` resolvable when it is far below machine epsilon.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from . import conformal
from .fourier import CosineSeries, conjugate_grid, fourier_coefficients, hilbert_periodic
from .profile import ProfileFunction

TAIL_LIMIT = 1e-6


def wrap(t):
    """Reduce angles to (-pi, pi]."""
    t = np.asarray(t, dtype=float)
    return np.pi - np.remainder(np.pi - t, 2 * np.pi)


@dataclass(frozen=True, eq=False)
class Symbol:
    kind: str
    params: dict
    log_boundary: Callable        # t -> log phi*(e^{it})
    interior: Callable | None = None
    touch_points: tuple = ()      # angles where |phi*| reaches 1
    excluded: float = 0.0         # half-width of a removed neighbourhood of t = 0
    diagnostics: dict = field(default_factory=dict)
    spec: str = ""

    def boundary(self, t):
        """phi*(e^{it})."""
        with np.errstate(under="ignore"):
            out = np.exp(self.log_boundary(t))
        return out

    def __call__(self, z):
        if self.interior is None:
            raise NotImplementedError(f"{self.kind}: no interior evaluator")
        return self.interior(np.asarray(z, dtype=complex))


def _check_excluded(t, radius):
    if radius and np.any(np.abs(wrap(t)) < radius):
        raise ValueError(f"boundary evaluation within {radius:g} of the singular point t = 0")


# ---------------------------------------------------------------------------
def identity_symbol() -> Symbol:
    def log_b(t):
        return 1j * np.asarray(t, dtype=float)
    return Symbol("identity", {}, log_b, lambda z: z, spec="identity")


def constant_symbol(c: complex) -> Symbol:
    c = complex(c)
    if abs(c) >= 1:
        raise ValueError("constant symbol must lie in the open disk")
    with np.errstate(divide="ignore"):
        lc = complex(np.log(c)) if c != 0 else complex(-np.inf, 0.0)

    def log_b(t):
        return np.full(np.shape(t), lc, dtype=complex)

    def interior(z):
        return np.full(np.shape(z), c, dtype=complex)
    return Symbol("constant", {"c": [c.real, c.imag]}, log_b, interior, spec=f"const:{c.real:g}{c.imag:+g}i")


# ---------------------------------------------------------------------------
def general_symbol(f: ProfileFunction, K: int = 4096, *, spline_points: int | None = None,
                   excluded: float = 1e-12) -> Symbol:
    """``phi = M Phi`` with ``M = exp(-(1+z)/(1-z))`` and ``Phi = exp(-F)``,
    ``F = sum a_k z^k`` the analytic completion of the profile ``f``."""
    series = fourier_coefficients(f, K)
    if series.tail_bound >= TAIL_LIMIT:
        raise ValueError(f"cosine tail bound {series.tail_bound:.3g} too large; raise K")
    m = spline_points or max(16 * K, 2 ** 16)
    grid = 2 * np.pi * np.arange(m + 1) / m
    hf = conjugate_grid(series, m)
    spline = CubicSpline(grid, np.append(hf, hf[0]), bc_type="periodic")

    def log_b(t):
        t = wrap(t)
        _check_excluded(t, excluded)
        arg = -1.0 / np.tan(0.5 * t) - spline(np.remainder(t, 2 * np.pi))
        return -f(t) + 1j * arg

    a = series.a

    def interior(z):
        z = np.asarray(z, dtype=complex)
        F = np.polynomial.polynomial.polyval(z, a)
        return np.exp(-(1 + z) / (1 - z) - F)

    # (Hf)'(t) = o(1/t^2) near 0, reported as max t^2 |(Hf)'(t)|
    probe = np.geomspace(1e-4, 1e-1, 200)
    diag = float(np.max(probe ** 2 * np.abs(spline(probe, 1))))
    return Symbol("general", {"K": K, "n_knots": int(len(f.c_n))}, log_b, interior,
                  touch_points=(0.0,), excluded=excluded,
                  diagnostics={"tail_bound": series.tail_bound, "decay_constant": series.decay_constant,
                               "max_t2_dHf": diag},
                  spec="general")


def _chain_symbol(kind, params, eps, outer_map: Callable) -> Symbol:
    """exp(-outer_map(g)) for g the half-disk chain."""
    def log_b(t):
        t = wrap(t)
        return -outer_map(conformal.boundary_half_disk(t, eps))

    def interior(z):
        return np.exp(-outer_map(conformal.to_half_disk(z, eps)))
    return Symbol(kind, {**params, "eps": eps}, log_b, interior, touch_points=(0.0,))


def f_theta(v, theta: float):
    """``v (-log v)^theta`` on the right half-disk (0 maps to 0)."""
    v = np.asarray(v, dtype=complex)
    out = np.zeros(v.shape, dtype=complex)
    nz = v != 0
    out[nz] = v[nz] * (-np.log(v[nz])) ** theta
    return out


def phi_theta_symbol(theta: float, eps: float | None = None) -> Symbol:
    if theta <= 0:
        raise ValueError("theta must be positive")
    if eps is None:
        eps = math.exp(-2 * theta)
    if not 0 < eps <= math.exp(-2 * theta) * (1 + 1e-12):
        raise ValueError("need 0 < eps <= exp(-2 theta)")
    s = _chain_symbol("phi_theta", {"theta": theta}, eps, lambda g: f_theta(g, theta))
    return replace(s, spec=f"phi-theta:{theta:g}")


def lens_symbol(eps: float = 0.25) -> Symbol:
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    s = _chain_symbol("lens", {}, eps, np.sqrt)
    return replace(s, spec="lens")


# ---------------------------------------------------------------------------
def outer_symbol(a, psi, *, A_grid=(2.0, 4.0, 8.0)) -> Symbol:
    """Outer function with boundary modulus ``h = 1 - 1/Psi(a)``.

    ``a`` holds samples at ``t_j = 2 pi j / m``.  Boundary values interpolate
    linearly between samples; interior values use the discrete Herglotz mean.
    """
    a = np.asarray(a, dtype=float)
    m = a.size
    if m < 16:
        raise ValueError("need at least 16 boundary samples")
    if np.any(~np.isfinite(a)) or np.any(a <= 0):
        raise ValueError("a must be positive and finite")
    log_a = np.log(a)
    L = psi.log_psi(log_a)
    if np.any(L < math.log(2.0) - 1e-12):
        raise ValueError("a must satisfy a >= Psi^{-1}(2) pointwise")
    log_h = np.log1p(-np.exp(-L))
    conj = hilbert_periodic(log_h)
    grid = 2 * np.pi * np.arange(m + 1) / m
    lh_c = np.append(log_h, log_h[0])
    cj_c = np.append(conj, conj[0])

    # Morse-Transue proxy: mean of Psi(A a) finite for every A
    proxy = {}
    for A in A_grid:
        try:
            la = psi.log_psi(log_a + math.log(A))
            lm = float(np.logaddexp.reduce(la) - math.log(m))
        except Exception:
            lm = math.inf
        proxy[A] = lm
        if not math.isfinite(lm) or lm > 700:
            warnings.warn(f"mean of Psi({A:g} a) overflows: a may fail the integrability test", RuntimeWarning)

    def log_b(t):
        tt = np.remainder(np.asarray(t, dtype=float), 2 * np.pi)
        return np.interp(tt, grid, lh_c) + 1j * np.interp(tt, grid, cj_c)

    nodes = np.exp(1j * grid[:-1])

    def interior(z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=complex)
        for i in range(0, flat.size, 256):
            zz = flat[i:i + 256, None]
            out[i:i + 256] = np.exp(np.mean((nodes + zz) / (nodes - zz) * log_h, axis=1))
        return out.reshape(z.shape)

    return Symbol("outer", {"m": m, "psi": psi.label}, log_b, interior,
                  diagnostics={"sup_modulus": float(np.exp(log_h.max())),
                               "log_mean_psi_Aa": {str(k): v for k, v in proxy.items()}},
                  spec="outer")
