"""Compactness and Schatten-class predicates evaluated on an estimated Carleson function.

Every predicate reduces to a ratio trace ``y(h)`` in log scale and asks how
its upper envelope moves as ``h -> 0``:

* ``down``: the ratio keeps decreasing, read as ``o(.)``;
* ``flat`` or ``up``: bounded below, read as failure of ``o(.)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .carleson import CarlesonProfile
from .orlicz import OrliczDomainError, OrliczFunction, Outcome

ENVELOPE_MARGIN = 0.05
DEFAULT_A_GRID = (2.0, 4.0, 8.0, 16.0, 64.0, 256.0)


@dataclass
class Verdict:
    criterion: str
    holds: Outcome
    params: dict = field(default_factory=dict)
    evidence: list = field(default_factory=list)   # [[h, ratio], ...]
    note: str = ""

    def __post_init__(self):
        if self.holds != Outcome.INCONCLUSIVE and not self.evidence:
            raise ValueError("a decided verdict needs evidence")

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "params": self.params, "holds": self.holds.value,
                "evidence": self.evidence, "note": self.note}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def envelope_trend(log_h, y, margin: float = ENVELOPE_MARGIN):
    """Trend of the upper envelope of ``y`` as ``h`` decreases.

    The half of the points with the smallest ``h`` is split again into an
    earlier and a later half; the drop is ``max(early) - max(late)``.
    Returns ``(trend, drop)`` with trend in up / down / flat / inconclusive.
    """
    order = np.argsort(-np.asarray(log_h))
    v = np.asarray(y, dtype=float)[order]
    if v.size < 4:
        return "inconclusive", float("nan")
    tail = v[v.size // 2:]
    half = tail.size // 2
    drop = float(np.max(tail[:half]) - np.max(tail[half:]))
    if drop > margin:
        return "down", drop
    if drop < -margin:
        return "up", drop
    if abs(drop) <= margin / 2:
        return "flat", drop
    return "inconclusive", drop


def _usable(profile: CarlesonProfile):
    ok = profile.usable
    if ok.sum() < 4:
        raise ValueError("profile has fewer than 4 usable heights")
    h = profile.h[ok]
    if math.log10(h.max() / h.min()) < 2 - 1e-9:
        raise ValueError("profile must span at least two decades of usable heights")
    return h, profile.rho[ok]


def _decide(name, params, h, log_ratio, *, bounded_is_failure=True, note=""):
    """Read a verdict off the envelope drop.

    With ``bounded_is_failure`` (little-oh predicates) the ratio must fall
    by more than the margin to hold and fails once the drop is at most half
    the margin.  Otherwise (big-oh predicates) only a rise by more than the
    margin fails, and a rise of at most half the margin holds.
    """
    trend, drop = envelope_trend(np.log(h), log_ratio)
    m = ENVELOPE_MARGIN
    if bounded_is_failure:
        holds = Outcome.HOLDS if drop > m else Outcome.FAILS if drop <= m / 2 else Outcome.INCONCLUSIVE
    else:
        holds = Outcome.FAILS if drop < -m else Outcome.HOLDS if drop >= -m / 2 else Outcome.INCONCLUSIVE
    evidence = [[float(a), math.exp(min(float(b), 709.0))] for a, b in zip(h, log_ratio)]
    params = {**params, "trend": trend, "envelope_drop": drop}
    return Verdict(name, holds, params, evidence, note)


def maccluer_h2(profile: CarlesonProfile) -> Verdict:
    """``rho(h) = o(h)``."""
    h, rho = _usable(profile)
    return _decide("maccluer_h2", {}, h, np.log(rho) - np.log(h))


def alpha_carleson(profile: CarlesonProfile, alpha: float) -> Verdict:
    """``rho(h) <~ h^alpha``: fails only on an upward trend of ``rho / h^alpha``."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    h, rho = _usable(profile)
    return _decide("alpha_carleson", {"alpha": alpha}, h, np.log(rho) - alpha * np.log(h),
                   bounded_is_failure=False)


def schatten_decay(profile: CarlesonProfile, p: float) -> Verdict:
    """``rho(h) (log 1/h)^{2/p} / h -> 0``, necessary for membership in S_p."""
    if p <= 0:
        raise ValueError("p must be positive")
    h, rho = _usable(profile)
    y = np.log(rho) + (2.0 / p) * np.log(np.log(1.0 / h)) - np.log(h)
    return _decide("schatten_decay", {"p": p, "delta": 2.0 / p}, h, y,
                   note="necessary condition only: 'holds' does not prove membership in S_p")


def hpsi_compactness(profile: CarlesonProfile, psi: OrliczFunction, A_grid=DEFAULT_A_GRID) -> Verdict:
    """``rho(h) Psi(A Psi^{-1}(1/h)) -> 0`` for every A in the grid."""
    A_grid = tuple(float(A) for A in A_grid)
    if not {2.0, 4.0, 8.0} <= set(A_grid) or min(A_grid) <= 1:
        raise ValueError("A_grid must contain 2, 4 and 8, all > 1")
    ok = profile.usable
    h, rho = profile.h[ok], profile.rho[ok]
    dropped = [float(x) for x in profile.h[~ok]]
    try:
        log_x = np.asarray(psi.log_inverse(-np.log(h)), dtype=float)
        good = np.isfinite(log_x)
    except OrliczDomainError:
        log_x = np.array([_safe_inverse(psi, -math.log(x)) for x in h])
        good = np.isfinite(log_x)
    dropped += [float(x) for x in h[~good]]
    h, rho, log_x = h[good], rho[good], log_x[good]
    if h.size < 4 or math.log10(h.max() / h.min()) < 2 - 1e-9:
        return Verdict("hpsi_compactness", Outcome.INCONCLUSIVE,
                       {"A_grid": list(A_grid), "psi": psi.label, "dropped_h": dropped},
                       note="fewer than two decades of evaluable heights")
    per_A, witness, worst = {}, None, None
    for A in A_grid:
        try:
            y = np.log(rho) + psi.log_psi(log_x + math.log(A))
        except OrliczDomainError:
            per_A[A] = "not evaluable"
            continue
        v = _decide("hpsi_A", {"A": A}, h, y)
        per_A[A] = v.holds.value
        if v.holds == Outcome.FAILS and witness is None:
            witness, worst = A, v
        if worst is None and v.holds != Outcome.HOLDS:
            worst = v
    params = {"A_grid": list(A_grid), "psi": psi.label, "verdict_per_A": {str(k): t for k, t in per_A.items()},
              "dropped_h": dropped}
    if witness is not None:
        return Verdict("hpsi_compactness", Outcome.FAILS, {**params, "witness_A": witness}, worst.evidence)
    if all(t == Outcome.HOLDS.value for t in per_A.values()):
        y = np.log(rho) + psi.log_psi(log_x + math.log(max(A_grid)))
        ev = [[float(a), math.exp(min(float(b), 709.0))] for a, b in zip(h, y)]
        return Verdict("hpsi_compactness", Outcome.HOLDS, params, ev)
    return Verdict("hpsi_compactness", Outcome.INCONCLUSIVE, params, worst.evidence if worst else [])


def _safe_inverse(psi, log_y):
    try:
        return psi.log_inverse(log_y)
    except OrliczDomainError:
        return math.nan
