"""Elementary conformal chain from the disk onto the half-disk V_eps.

    z --(z -> -z, then Cayley)--> w = i(1+z)/(1-z)        upper half-plane
      --(inverse Joukowski)-->    zeta, zeta^2 + 2 w zeta + 1 = 0, |zeta| < 1
      --(rotate, scale)-->        g = -i eps zeta          {Re > 0, |g| < eps}

The boundary point 1 goes to the corner 0, and g'(1) = -eps/4.
"""
from __future__ import annotations

import numpy as np


def cayley(z):
    z = np.asarray(z, dtype=complex)
    return 1j * (1 + z) / (1 - z)


def inverse_joukowski(w):
    """Root of zeta^2 + 2 w zeta + 1 = 0 inside the closed unit disk."""
    w = np.asarray(w, dtype=complex)
    s = np.sqrt(w * w - 1)
    big_plus = -w + s
    big_minus = -w - s
    big = np.where(np.abs(big_plus) >= np.abs(big_minus), big_plus, big_minus)
    return 1.0 / big


def to_half_disk(z, eps: float):
    """g(z) for interior points."""
    return -1j * eps * inverse_joukowski(cayley(z))


def from_half_disk(g, eps: float):
    zeta = 1j * np.asarray(g, dtype=complex) / eps
    w = -0.5 * (zeta + 1.0 / zeta)
    return (w - 1j) / (w + 1j)


def boundary_half_disk(t, eps: float):
    """g(e^{it}) through the boundary correspondence; t in (-pi, pi], t != 0.

    On the circle w = -cot(t/2) is real.  |w| > 1 lands on the segment
    (-i eps, i eps); |w| <= 1 lands on the arc |g| = eps.
    """
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        w = -1.0 / np.tan(0.5 * t)
    out = np.empty(t.shape, dtype=complex)
    seg = np.abs(w) > 1
    ws = w[seg]
    # -w + sign(w) sqrt(w^2 - 1), rewritten to avoid cancellation/overflow
    inv = 1.0 / ws
    out[seg] = -np.sign(ws) * np.abs(inv) / (1.0 + np.sqrt(1.0 - inv * inv))
    wa = w[~seg]
    out[~seg] = -wa + 1j * np.sqrt(1.0 - wa * wa)
    return -1j * eps * out
