"""Even C^2 profile f built from a pair of decreasing sequences (h_n), (c_n).

A step function takes the value ``(h_j - h_{j+1}) / (c_j - c_{j+1})`` on
``(c_{j+1}, c_j]``, so its integral over ``[0, c_n]`` is exactly ``h_n``.
Integrating it three more times against ``(t-u)^3 / pi^3`` gives a raw
profile that is a piecewise quartic.  The raw profile has a corner at
``t = pi`` once it is extended evenly, which would make the cosine
coefficients decay like ``k^-2``; it is therefore composed with a smooth
contraction ``tau`` that flattens it at ``pi`` without touching ``[0, pi/2]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ProfileFunction:
    c_knots: np.ndarray       # c_0 = pi > c_1 > ... > c_N
    h_targets: np.ndarray     # h_0 = pi > h_1 > ... > h_N
    step_levels: np.ndarray   # value on (c_{j+1}, c_j], last one on (0, c_N]
    flatten_from: float = math.pi / 2

    # -- raw quartic and its derivatives (t in [0, pi]) --------------------
    def _raw(self, t, order=0):
        t = np.asarray(t, dtype=float)
        c = self.c_knots
        lower = np.append(c[1:], 0.0)
        s = self.step_levels
        power = 4 - order
        scale = {0: 0.25, 1: 1.0, 2: 3.0}[order] / math.pi ** 3
        out = np.zeros(t.shape)
        for sj, hi, lo in zip(s, c, lower):
            a = np.maximum(t - lo, 0.0)
            b = np.maximum(t - hi, 0.0)
            out += sj * (a ** power - b ** power)
        return scale * out

    def _tau(self, t):
        w = math.pi - self.flatten_from
        e = np.maximum(t - self.flatten_from, 0.0)
        return t - e ** 3 / (3 * w * w), 1.0 - (e / w) ** 2, -2.0 * e / (w * w)

    @staticmethod
    def _fold(t):
        t = np.abs(np.remainder(np.asarray(t, dtype=float) + math.pi, 2 * math.pi) - math.pi)
        return t

    def __call__(self, t):
        """f(t), even and 2 pi-periodic."""
        u = self._fold(t)
        tau, _, _ = self._tau(u)
        out = self._raw(tau)
        return out if np.ndim(t) else float(out)

    def derivative(self, t, order: int = 1):
        """First or second derivative of f on [0, pi]."""
        u = np.asarray(t, dtype=float)
        tau, d1, d2 = self._tau(u)
        if order == 1:
            return self._raw(tau, 1) * d1
        if order == 2:
            return self._raw(tau, 2) * d1 ** 2 + self._raw(tau, 1) * d2
        raise ValueError("order must be 1 or 2")

    def step_integral(self, upto):
        """Integral of the step function over [0, upto], upto in [0, pi]."""
        c = self.c_knots
        lower = np.append(c[1:], 0.0)
        x = np.asarray(upto, dtype=float)[..., None]
        return np.sum(self.step_levels * np.clip(x - lower, 0.0, c - lower), axis=-1)

    def inverse(self, y):
        """f^{-1}(y) on [0, pi] by bisection; y above f(pi) maps to pi."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        lo = np.zeros_like(y)
        hi = np.full_like(y, math.pi)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            below = self(mid) < y
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)

    @property
    def h_n(self):
        return self.h_targets[1:]

    @property
    def c_n(self):
        return self.c_knots[1:]


def build_profile_from_sequences(h_n, c_n, *, flatten_from: float = math.pi / 2) -> ProfileFunction:
    """Profile with ``f(c_n) <= h_n`` from strictly decreasing sequences."""
    h = np.asarray(h_n, dtype=float)
    c = np.asarray(c_n, dtype=float)
    if h.ndim != 1 or h.shape != c.shape or h.size == 0:
        raise ValueError("h_n and c_n must be 1-d of equal nonzero length")
    if np.any(h <= 0) or np.any(c <= 0):
        raise ValueError("sequences must be positive")
    if np.any(np.diff(h) >= 0) or np.any(np.diff(c) >= 0):
        raise ValueError("sequences must be strictly decreasing")
    if c[0] >= math.pi or h[0] >= math.pi:
        raise ValueError("c_n and h_n must lie in (0, pi)")
    hh = np.concatenate([[math.pi], h])
    cc = np.concatenate([[math.pi], c])
    steps = np.append(-np.diff(hh) / -np.diff(cc), hh[-1] / cc[-1])
    return ProfileFunction(cc, hh, steps, flatten_from)
