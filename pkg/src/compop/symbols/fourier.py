"""Cosine coefficients of even periodic functions and their conjugate series."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class CosineSeries:
    """``f(t) ~ sum_k a_k cos(kt)``, k = 0..K."""

    a: np.ndarray
    decay_constant: float   # sup_k k^2 |a_k|
    tail_bound: float       # estimate of sum_{k>K} |a_k|

    @property
    def K(self) -> int:
        return len(self.a) - 1

    def __call__(self, t):
        return cosine_sum(self.a, t)


def fourier_coefficients(f, K: int, *, oversample: int = 8) -> CosineSeries:
    """Cosine coefficients ``a_0..a_K`` of an even 2 pi-periodic callable.

    Sampled on ``oversample * K`` equispaced points; with ``|a_k| <= C/k^2``
    the tail is bounded by ``C/K``, with ``C`` read off the upper half of the
    computed spectrum.
    """
    if K < 256 or K & (K - 1):
        raise ValueError("K must be a power of two >= 256")
    m = oversample * K
    t = 2 * np.pi * np.arange(m) / m
    spec = np.fft.rfft(np.asarray(f(t), dtype=float))
    a = np.empty(K + 1)
    a[0] = spec[0].real / m
    a[1:] = 2.0 * spec[1:K + 1].real / m
    k = np.arange(1, K + 1)
    weighted = k * k * np.abs(a[1:])
    decay = float(weighted.max())
    tail = float(weighted[K // 2 - 1:].max()) / K
    return CosineSeries(a, decay, tail)


def _chunked(a, t, trig, start):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    k = np.arange(start, len(a))
    coef = a[start:]
    out = np.empty(t.shape)
    flat_t, flat_o = t.ravel(), out.ravel()
    step = max(1, 2 ** 22 // max(len(k), 1))
    for i in range(0, flat_t.size, step):
        flat_o[i:i + step] = trig(np.outer(flat_t[i:i + step], k)) @ coef
    return out


def cosine_sum(a, t):
    a = np.asarray(a, dtype=float)
    out = _chunked(a, t, np.cos, 0)
    return out if np.ndim(t) else float(out[0])


def conjugate_series(a, t):
    """``Hf(t) = sum_{k>=1} a_k sin(kt)`` by direct summation."""
    a = np.asarray(getattr(a, "a", a), dtype=float)
    out = _chunked(a, t, np.sin, 1) if len(a) > 1 else np.zeros(np.shape(np.atleast_1d(t)))
    return out if np.ndim(t) else float(out[0])


def conjugate_grid(a, m: int):
    """Hf on the grid ``2 pi j / m`` via one inverse real FFT (m >= 2K)."""
    a = np.asarray(getattr(a, "a", a), dtype=float)
    K = len(a) - 1
    if m < 2 * K:
        raise ValueError("grid too coarse for the coefficient count")
    spec = np.zeros(m // 2 + 1, dtype=complex)
    # sin(kt) = Re(-i e^{ikt})
    spec[1:K + 1] = -0.5j * a[1:] * m
    return np.fft.irfft(spec, n=m)


def hilbert_periodic(values):
    """Periodic Hilbert transform of equispaced samples (multiplier -i sign k)."""
    v = np.asarray(values, dtype=float)
    spec = np.fft.rfft(v)
    spec[0] = 0.0
    spec *= -1j
    if v.size % 2 == 0:
        spec[-1] = 0.0
    return np.fft.irfft(spec, n=v.size)
