"""Orlicz functions evaluated in log-domain, and their growth conditions.

Every function is exposed through ``L(s) = log Psi(exp(s))``.  Ratios such as
``Psi(A x) / Psi(x)**k`` become ``L(s + log A) - k L(s)``, which stays finite
long after ``Psi`` itself has left the double range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

LOG2 = math.log(2.0)
TREND_MARGIN = 1e-3
# largest log Psi we accept on a default grid: rounding in L(s+a) - L(s)
# stays far below TREND_MARGIN
_L_PRECISION_CAP = 1e10
_S_CAP = 690.0


class OrliczDomainError(ValueError):
    """Raised when an evaluation leaves the representable domain."""


class WitnessNotFound(RuntimeError):
    pass


class Outcome(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# stable scalar kernels

def _log_expm1_exp(u):
    """log(exp(exp(u)) - 1) for any real u."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    big = u > 3.5
    small = u < -30.0
    mid = ~(big | small)
    with np.errstate(over="ignore"):
        eu = np.exp(u[big])
    out[big] = eu + np.log1p(-np.exp(-eu))
    out[small] = u[small] + 0.5 * np.exp(u[small])
    out[mid] = np.log(np.expm1(np.exp(u[mid])))
    return out


def _log_softplus(s):
    """log(log(1 + exp(s)))."""
    s = np.asarray(s, dtype=float)
    out = np.empty_like(s)
    big = s > 35.0
    small = s < -35.0
    mid = ~(big | small)
    out[big] = np.log(s[big] + np.log1p(np.exp(-s[big])))
    out[small] = s[small] + np.log1p(-0.5 * np.exp(s[small]))
    out[mid] = np.log(np.log1p(np.exp(s[mid])))
    return out


# ---------------------------------------------------------------------------
# the function type

FAMILIES = (
    "power", "exp_power", "exp_log_power", "exp_x",
    "log_exponent", "explicit_product", "piecewise_convex",
)


@dataclass(frozen=True, eq=False)
class OrliczFunction:
    """A convex growth function, evaluable as ``L(s) = log Psi(e^s)``.

    ``knots`` is only used by ``piecewise_convex``: an ``(m, 2)`` array of
    ``(log x_i, log Psi(x_i))``.  Between knots the function is linear in
    ``x``; below the first knot it is linear to the origin; past the last
    knot it continues the final log-log chord slope.
    """

    kind: str
    param: float | str | None = None
    knots: np.ndarray | None = None
    domain_floor: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown Orlicz family {self.kind!r}")
        if not self.label:
            object.__setattr__(self, "label", _default_label(self))

    # -- evaluation -------------------------------------------------------
    def log_psi(self, s):
        """``log Psi(e^s)``; scalar in, scalar out."""
        s_arr = np.asarray(s, dtype=float)
        if not np.all(np.isfinite(s_arr)):
            raise OrliczDomainError("s must be finite")
        out = _eval_log(self, s_arr)
        if not np.all(np.isfinite(out)):
            raise OrliczDomainError(f"{self.label}: log Psi not representable")
        return out if out.ndim else float(out)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise OrliczDomainError("Psi is defined on [0, inf)")
        out = np.zeros_like(x)
        pos = x > 0
        with np.errstate(over="ignore"):
            out[pos] = np.exp(self.log_psi(np.log(x[pos])))
        return out if out.ndim else float(out)

    def log_inverse(self, log_y):
        """``log Psi^{-1}(e^{log_y})`` by monotone bisection on s."""
        return _log_inverse(self, log_y)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise OrliczDomainError("inverse needs y > 0")
        out = np.exp(self.log_inverse(np.log(y)))
        return out if np.ndim(out) else float(out)

    @property
    def s_floor(self) -> float:
        return math.log(self.domain_floor) if self.domain_floor > 0 else -math.inf

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "param": self.param, "label": self.label,
             "domain_floor": self.domain_floor}
        if self.knots is not None:
            d["knots_log"] = [[float(a), float(b)] for a, b in self.knots]
        return d


def _default_label(psi: OrliczFunction) -> str:
    k, p = psi.kind, psi.param
    if k == "power":
        return f"x^{p:g}"
    if k == "exp_power":
        return f"exp(x^{p:g})-1"
    if k == "exp_x":
        return "exp(x)-1"
    if k == "exp_log_power":
        return f"exp(log(x+1)^{p:g})-1"
    if k == "log_exponent":
        return "x^(log log x)" if p == "loglog" else "x^(log log log x)"
    if k == "explicit_product":
        return "exp(log x * log log log x)"
    return "piecewise"


def _raw_log(psi: OrliczFunction, s):
    k, p = psi.kind, psi.param
    if k == "power":
        return p * s
    if k == "exp_power":
        return _log_expm1_exp(p * s)
    if k == "exp_x":
        return _log_expm1_exp(s)
    if k == "exp_log_power":
        return _log_expm1_exp(p * _log_softplus(s))
    if k == "log_exponent" and p == "loglog":
        return s * np.log(s)
    # x^(log log log x) and exp(log x * log log log x) coincide
    return s * np.log(np.log(s))


def _eval_log(psi: OrliczFunction, s):
    if psi.kind == "piecewise_convex":
        return _piecewise_log(psi.knots, s)
    s0 = psi.s_floor
    if s0 == -math.inf:
        return _raw_log(psi, s)
    out = np.empty_like(s)
    above = s >= s0
    out[above] = _raw_log(psi, s[above])
    l0 = _raw_log(psi, np.array([s0]))[0]
    # linear to the origin below the floor: Psi(x) = Psi(x0) x / x0
    out[~above] = l0 + (s[~above] - s0)
    return out


def _piecewise_log(knots, s):
    lx, ly = knots[:, 0], knots[:, 1]
    x = np.exp(lx)
    out = np.empty_like(s)
    below = s <= lx[0]
    beyond = s >= lx[-1]
    inner = ~(below | beyond)
    out[below] = ly[0] + (s[below] - lx[0])
    q = (ly[-1] - ly[-2]) / (lx[-1] - lx[-2])
    out[beyond] = ly[-1] + q * (s[beyond] - lx[-1])
    if inner.any():
        si = s[inner]
        i = np.clip(np.searchsorted(lx, si, side="right") - 1, 0, len(lx) - 2)
        lam = (np.exp(si) - x[i]) / (x[i + 1] - x[i])
        lam = np.clip(lam, 0.0, 1.0)
        with np.errstate(divide="ignore"):
            out[inner] = np.logaddexp(ly[i] + np.log1p(-lam), ly[i + 1] + np.log(lam))
    return out


def _log_inverse(psi: OrliczFunction, log_y, iters: int = 200):
    t = np.atleast_1d(np.asarray(log_y, dtype=float))
    if not np.all(np.isfinite(t)):
        raise OrliczDomainError("inverse needs finite log y")

    def L(s):
        with np.errstate(over="ignore", invalid="ignore"):
            v = _eval_log(psi, s)
        return np.where(np.isnan(v), np.inf, v)

    lo = np.full_like(t, -1.0)
    hi = np.full_like(t, 1.0)
    for _ in range(64):
        bad = L(lo) > t
        if not bad.any():
            break
        lo[bad] = 2.0 * lo[bad] - 1.0
    for _ in range(64):
        bad = L(hi) < t
        if not bad.any():
            break
        hi[bad] = np.minimum(2.0 * hi[bad] + 1.0, 745.0)
        if np.all(hi[bad] >= 745.0) and np.any(L(hi[bad]) < t[bad]):
            raise OrliczDomainError("Psi^{-1} out of evaluable range")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        up = L(mid) < t
        lo = np.where(up, mid, lo)
        hi = np.where(up, hi, mid)
        if np.all(hi - lo <= 4e-16 * np.maximum(1.0, np.abs(hi))):
            break
    out = 0.5 * (lo + hi)
    return out if np.ndim(log_y) else float(out[0])


# ---------------------------------------------------------------------------
# constructors

def power(p: float) -> OrliczFunction:
    if p <= 1:
        raise ValueError("power(p) needs p > 1 to be superlinear")
    return OrliczFunction("power", float(p))


def exp_power(alpha: float) -> OrliczFunction:
    if alpha < 1:
        raise ValueError("exp(x^alpha)-1 is convex on [0, inf) only for alpha >= 1")
    return OrliczFunction("exp_power", float(alpha))


def exp_x() -> OrliczFunction:
    return OrliczFunction("exp_x")


def exp_log_power(alpha: float) -> OrliczFunction:
    if alpha <= 1:
        raise ValueError("exp(log(x+1)^alpha)-1 needs alpha > 1")
    return OrliczFunction("exp_log_power", float(alpha))


def log_exponent(form: str) -> OrliczFunction:
    # floors sit where d L / d s reaches 1, so the linear extension is C^1
    if form == "loglog":
        return OrliczFunction("log_exponent", "loglog", domain_floor=math.e)
    if form == "logloglog":
        return OrliczFunction("log_exponent", "logloglog", domain_floor=math.exp(math.e))
    raise ValueError("log_exponent form must be 'loglog' or 'logloglog'")


def explicit_product() -> OrliczFunction:
    return OrliczFunction("explicit_product", domain_floor=math.exp(math.e))


def piecewise_convex(x, psi_x=None, *, log_values=None, label: str = "piecewise") -> OrliczFunction:
    """Piecewise Orlicz function through the knots ``(x_i, Psi(x_i))``.

    Pass either ``psi_x`` or, for values beyond double range,
    ``log_values = log Psi(x_i)``.
    """
    x = np.asarray(x, dtype=float)
    if log_values is None:
        ly = np.log(np.asarray(psi_x, dtype=float))
    else:
        ly = np.asarray(log_values, dtype=float)
    lx = np.log(x)
    if x.ndim != 1 or len(x) < 2 or len(ly) != len(x):
        raise ValueError("need at least two (x, psi) knots")
    if np.any(np.diff(lx) <= 0) or np.any(np.diff(ly) <= 0):
        raise ValueError("knots must be strictly increasing in x and psi")
    if not np.all(np.isfinite(ly)) or np.any(x <= 0):
        raise ValueError("knots must be positive and finite")
    log_slopes = ly[:-1] + np.log(np.expm1(np.diff(ly))) - np.log(np.diff(x))
    prev = np.concatenate([[ly[0] - lx[0]], log_slopes[:-1]])
    if np.any(log_slopes < prev - 1e-12):
        raise ValueError("knot slopes must be nondecreasing (convexity)")
    q = (ly[-1] - ly[-2]) / (lx[-1] - lx[-2])
    if q <= 1:
        raise ValueError("final log-log slope must exceed 1 (superlinearity)")
    return OrliczFunction("piecewise_convex", None, np.column_stack([lx, ly]),
                          domain_floor=float(x[0]), label=label)


def eval_log(psi: OrliczFunction, s):
    """``log Psi(e^s)``."""
    return psi.log_psi(s)


def inverse(psi: OrliczFunction, y):
    return psi.inverse(y)


# ---------------------------------------------------------------------------
# growth conditions

CONDITIONS = ("Delta2", "DeltaSup2", "DeltaSup1", "Nabla0", "SlowGrowth",
              "ThetaCondition", "DominatedBy")


@dataclass(frozen=True)
class Condition:
    name: str
    A: float = 2.0
    eps: float = 0.5
    theta: float = 1.0
    profile: object = None

    def params(self) -> dict:
        if self.name == "DeltaSup2" or self.name == "DeltaSup1":
            return {"A": self.A}
        if self.name == "SlowGrowth":
            return {"A": self.A, "eps": self.eps}
        if self.name == "ThetaCondition":
            return {"A": self.A, "theta": self.theta}
        return {}

    def __str__(self):
        p = self.params()
        return self.name + ("(" + ", ".join(f"{k}={v:g}" for k, v in p.items()) + ")" if p else "")


def parse_condition(text: str) -> Condition:
    """``Delta2``, ``DeltaSup2:2``, ``DeltaSup1:2``, ``Nabla0``,
    ``SlowGrowth:0.5``, ``ThetaCondition:2,1``."""
    name, _, arg = text.partition(":")
    aliases = {"delta2": "Delta2", "deltasup2": "DeltaSup2", "deltasup1": "DeltaSup1",
               "nabla0": "Nabla0", "slowgrowth": "SlowGrowth", "theta": "ThetaCondition",
               "thetacondition": "ThetaCondition"}
    key = aliases.get(name.strip().lower())
    if key is None:
        raise ValueError(f"unknown condition {text!r}")
    vals = [float(v) for v in arg.split(",") if v.strip()] if arg else []
    if key in ("DeltaSup2", "DeltaSup1"):
        return Condition(key, A=vals[0] if vals else 2.0)
    if key == "SlowGrowth":
        return Condition(key, eps=vals[0] if vals else 0.5)
    if key == "ThetaCondition":
        A = vals[0] if vals else 2.0
        return Condition(key, A=A, theta=vals[1] if len(vals) > 1 else 1.0)
    return Condition(key)


@dataclass(frozen=True)
class WitnessSequence:
    x: np.ndarray
    h: np.ndarray
    c: np.ndarray
    log_h: np.ndarray
    log_c: np.ndarray

    def __len__(self):
        return len(self.x)

    @property
    def log_ratio(self):
        """``log Psi(2 x_n) / Psi(x_n) = -log c_n``."""
        return -self.log_c


@dataclass
class GrowthVerdict:
    condition: str
    holds: Outcome
    fitted: list = field(default_factory=list)  # (log x, log ratio) pairs
    witness: WitnessSequence | None = None
    params: dict = field(default_factory=dict)
    grid_range: tuple = ()
    note: str = ""

    def __post_init__(self):
        if self.holds == Outcome.FAILS and not self.fitted:
            raise ValueError("a failing verdict needs supporting samples")


def default_grid(psi: OrliczFunction, n: int = 64) -> np.ndarray:
    """Log-spaced x grid from ``10 * floor`` up to where ``log Psi`` hits 1e10."""
    s_lo = math.log(10.0 * max(psi.domain_floor, 1.0))
    s_hi = _S_CAP
    if _eval_log(psi, np.array([_S_CAP]))[0] > _L_PRECISION_CAP:
        s_hi = psi.log_inverse(_L_PRECISION_CAP)
    if s_hi - s_lo < 4 * math.log(10.0):
        raise ValueError("cannot place a 4-decade grid for this function")
    return np.exp(np.linspace(s_lo, s_hi, n))


def _trend(v: np.ndarray, margin: float) -> str:
    """'flat', 'up', 'down' or 'mixed' for an exactly computed sequence."""
    v = np.asarray(v, dtype=float)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(v))))
    d = np.diff(v)
    if np.ptp(v) <= margin:
        return "flat"
    rise = v[-1] - v[0]
    if np.all(d >= -tol) and rise > margin:
        return "up"
    if np.all(d <= tol) and rise < -margin:
        return "down"
    return "mixed"


def _ratio(psi: OrliczFunction, cond: Condition, s, A: float):
    L = psi.log_psi
    a = math.log(A)
    if cond.name == "Delta2":
        return L(s + LOG2) - L(s)
    if cond.name == "DeltaSup2":
        return L(s + a) - 2.0 * L(s)
    if cond.name == "DeltaSup1":
        return L(s + a) - L(s) - s
    if cond.name == "SlowGrowth":
        return L(s + a) - L(s) - cond.eps * np.log(L(s))
    if cond.name == "ThetaCondition":
        return L(s + a) - L(s) - cond.theta * np.log(L(s))
    raise ValueError(cond.name)


def check_condition(psi: OrliczFunction, condition, grid=None, margin: float = TREND_MARGIN) -> GrowthVerdict:
    """Decide one growth condition from its defining log-ratio on a grid.

    The verdict looks only at the last half of the grid (largest x).  A
    ratio that moves by less than ``margin`` there counts as bounded.
    """
    cond = parse_condition(condition) if isinstance(condition, str) else condition
    if cond.name == "DominatedBy":
        return _check_dominated(psi, cond)
    x = default_grid(psi) if grid is None else np.asarray(grid, dtype=float)
    if x.size < 32 or np.any(np.diff(x) <= 0) or np.any(x <= 0):
        raise ValueError("grid needs >= 32 increasing positive points")
    s = np.log(x)
    if s[-1] - max(s[0], psi.s_floor) < 4 * math.log(10.0):
        raise ValueError("grid must span >= 4 decades above the domain floor")
    tail = slice(len(s) // 2, None)
    rng = (float(x[tail][0]), float(x[-1]))

    if cond.name == "Nabla0":
        # discrete convexity of kappa(s) = log Psi(e^s)
        st = s[tail]
        L = psi.log_psi(st)
        d2 = L[2:] - 2 * L[1:-1] + L[:-2]
        fitted = list(zip(st[1:-1].tolist(), d2.tolist()))
        holds = Outcome.HOLDS if np.all(d2 >= -margin) else Outcome.FAILS
        return GrowthVerdict(str(cond), holds, fitted, params=cond.params(), grid_range=rng)

    if cond.name == "ThetaCondition":
        # "for every A > 1", probed on A, A^2, A^4
        As = (cond.A, cond.A ** 2, cond.A ** 4)
        trends, fits = [], []
        for A in As:
            r = _ratio(psi, cond, s[tail], A)
            trends.append(_trend(r, margin))
            fits.append(list(zip(s[tail].tolist(), r.tolist())))
        if all(t == "down" for t in trends):
            return GrowthVerdict(str(cond), Outcome.HOLDS, fits[-1], params={**cond.params(), "A_grid": As},
                                 grid_range=rng)
        bad = [i for i, t in enumerate(trends) if t in ("up", "flat")]
        if bad:
            i = bad[0]
            return GrowthVerdict(str(cond), Outcome.FAILS, fits[i],
                                 params={**cond.params(), "A_grid": As, "witness_A": As[i]},
                                 grid_range=rng)
        return GrowthVerdict(str(cond), Outcome.INCONCLUSIVE, fits[0],
                             params={**cond.params(), "A_grid": As}, grid_range=rng)

    A = 2.0 if cond.name == "Delta2" else cond.A
    r = _ratio(psi, cond, s[tail], A)
    fitted = list(zip(s[tail].tolist(), r.tolist()))
    tr = _trend(r, margin)
    if cond.name in ("Delta2", "SlowGrowth"):  # ratio bounded above
        verdict = {"flat": Outcome.HOLDS, "down": Outcome.HOLDS, "up": Outcome.FAILS}
    else:  # DeltaSup2, DeltaSup1: ratio bounded below
        verdict = {"flat": Outcome.HOLDS, "up": Outcome.HOLDS, "down": Outcome.FAILS}
    holds = verdict.get(tr, Outcome.INCONCLUSIVE)
    out = GrowthVerdict(str(cond), holds, fitted, params={**cond.params(), "A": A}, grid_range=rng)
    if cond.name == "Delta2" and holds == Outcome.FAILS:
        try:
            out.witness = delta2_witness(psi, 12)
        except WitnessNotFound:
            pass
    return out


def _check_dominated(psi: OrliczFunction, cond: Condition) -> GrowthVerdict:
    """``Psi(2^{n+1}) >= 1 / rho(1 / Psi(2^n))`` on the profile's range."""
    prof = cond.profile
    if prof is None:
        raise ValueError("DominatedBy needs a profile")
    fitted = []
    ok = True
    n = 0
    while True:
        L_n = psi.log_psi(n * LOG2)
        if -L_n < math.log(prof.h.min()):
            break
        slack = psi.log_psi((n + 1) * LOG2) + prof.log_rho_at(-L_n)
        fitted.append((n * LOG2, float(slack)))
        ok &= slack >= -1e-9
        n += 1
    if not fitted:
        return GrowthVerdict(str(cond), Outcome.INCONCLUSIVE, [], note="no knot inside the profile range")
    return GrowthVerdict(str(cond), Outcome.HOLDS if ok else Outcome.FAILS, fitted)


# ---------------------------------------------------------------------------
# witnesses and constructions

def delta2_witness(psi: OrliczFunction, n_max: int, *, growth: float = 2.0,
                   h_min: float = 1e-9, per_decade: int = 64, x_start: float | None = None) -> WitnessSequence:
    """Greedy sequence ``x_n`` along which ``Psi(2x)/Psi(x)`` keeps growing.

    A candidate is accepted once the ratio has grown by ``growth`` since the
    last accepted point, so a function in Delta_2 (bounded ratio) exhausts the
    scan.  Stops at ``n_max`` terms or when ``h_n = 1/Psi(x_n) < h_min``.
    """
    if growth <= 1:
        raise ValueError("growth must exceed 1")
    s0 = math.log(x_start) if x_start else max(psi.s_floor, 0.0)
    step = math.log(10.0) / per_decade
    # stop the scan where log Psi(2x) would leave the float range
    try:
        s_hi = min(_S_CAP, float(psi.log_inverse(_L_PRECISION_CAP))) - LOG2
    except OrliczDomainError:
        s_hi = _S_CAP
    s_all = s0 + step * np.arange(max(int((s_hi - s0) / step), 0))
    L = psi.log_psi(s_all)
    ok = np.isfinite(L) & (L > 0)  # h_n < 1 < pi
    s_all, L = s_all[ok], L[ok]
    L2 = psi.log_psi(s_all + LOG2)
    lr = L2 - L
    keep_s, keep_lr = [], []
    thresh = 0.0
    log_growth = math.log(growth)
    for si, li, ri in zip(s_all, L, lr):
        if -li < math.log(h_min) or len(keep_s) >= n_max:
            break
        if ri > thresh:
            keep_s.append(si)
            keep_lr.append(ri)
            thresh = ri + log_growth
    if len(keep_s) < 3:
        raise WitnessNotFound(f"{psi.label}: Psi(2x)/Psi(x) does not grow (Delta_2?)")
    s = np.array(keep_s)
    log_h = -psi.log_psi(s)
    log_c = -np.array(keep_lr)
    return WitnessSequence(np.exp(s), np.exp(log_h), np.exp(log_c), log_h, log_c)


def build_critere_orlicz(n_max: int) -> OrliczFunction:
    """Convex Psi with ``x^3/3 <= Psi``, ``Psi(n!) = (n!)^3`` and ``Psi(3 k!) >= k (k!)^3``.

    Linear interpolation of ``x^3`` at the factorials: the largest convex
    function meeting ``Psi(n!) <= (n!)^3`` at every knot.  Past ``n_max!``
    it is exactly ``x^3``.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    xs = np.array([float(math.factorial(n)) for n in range(1, n_max + 1)])
    psi = piecewise_convex(xs, log_values=3.0 * np.log(xs), label=f"critere({n_max})")
    # constraints of the construction
    probe = np.exp(np.linspace(-3.0, math.log(xs[-1]) + 2.0, 2000))
    lower = 3.0 * np.log(probe) - math.log(3.0)
    assert np.all(psi.log_psi(np.log(probe)) >= lower - 1e-12), "x^3/3 <= Psi violated"
    for k in range(1, n_max):
        kf = math.log(math.factorial(k))
        assert psi.log_psi(math.log(3.0) + kf) >= math.log(k) + 3 * kf - 1e-12, "Psi(3 k!) bound violated"
    return psi


def build_dominating_orlicz(rho, n_max: int) -> OrliczFunction:
    """Piecewise Psi with knots at ``2^n`` and ``Psi(2^{n+1}) >= 1/rho(1/Psi(2^n))``.

    ``rho`` is a :class:`~compop.carleson.CarlesonProfile`; below its grid it
    is extended by its fitted power law.  Knots are lifted where needed so
    the chord slopes strictly increase.
    """
    if np.any(rho.rho <= 0):
        raise ValueError("rho vanishes on the grid: the symbol has sup-norm < 1")
    L = [0.0]  # Psi(1) = 1
    for n in range(n_max):
        need = -rho.log_rho_at(-L[-1])
        prev = L[-2] if n else -math.inf  # Psi(1/2) on the linear piece
        if n == 0:
            # slope from the origin is 1; next chord must beat it
            convex = L[-1] + math.log(2.0) + 1e-6
        else:
            convex = L[-1] + math.log(3.0 - 2.0 * math.exp(prev - L[-1])) + 1e-6
        L.append(max(need, convex, L[-1] + 1e-6))
    xs = 2.0 ** np.arange(n_max + 1)
    return piecewise_convex(xs, log_values=np.array(L), label="dominating")
