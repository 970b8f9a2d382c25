"""Empirical pullback measures, Carleson functions and dyadic window masses.

A boundary sample is a weighted point cloud ``phi*(e^{it_i})`` standing in
for the image of arclength.  The default mesh is equispaced, with a
geometric refinement around the points where ``|phi*|`` touches 1, so that
masses far below ``1/n`` near the contact point are still resolved.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2 * math.pi
MIN_COUNT = 10


def _geometric_cells(lo: float, hi: float, ratio: float):
    """Edges covering [lo, hi] with widths growing by ``1 + ratio``."""
    n = int(math.ceil(math.log(hi / lo) / math.log1p(ratio)))
    edges = hi / (1 + ratio) ** np.arange(n + 1)
    edges[-1] = lo
    return edges[::-1]


def _mesh(n, touch_points, refine_ratio, t_min, excluded):
    """Cells as (left, right, mid) arrays sorted by angle."""
    delta = TWO_PI / n
    left = -math.pi + np.arange(n) * delta
    right = left + delta
    right[-1] = math.pi
    mid = 0.5 * (left + right)
    if touch_points:
        cells = int(math.ceil(1.0 / refine_ratio))
        reach = cells * delta
        if reach >= math.pi / 2:
            raise ValueError("n_points too small for the requested refinement")
        edges = _geometric_cells(t_min, reach, refine_ratio)
        keep = np.ones(n, dtype=bool)
        parts = []
        for tp in touch_points:
            # the refined block replaces whole uniform cells around tp
            centre = -math.pi + round((tp + math.pi) / delta) * delta
            if abs(centre - tp) < 1e-9 * delta:
                centre = float(tp)
            keep &= np.abs(np.remainder(mid - centre + math.pi, TWO_PI) - math.pi) > reach
            gm = np.sqrt(edges[:-1]) * np.sqrt(edges[1:])
            parts.append((centre + edges[:-1], centre + edges[1:], centre + gm))
            parts.append((centre - edges[1:], centre - edges[:-1], centre - gm))
        left = np.concatenate([left[keep]] + [p[0] for p in parts])
        right = np.concatenate([right[keep]] + [p[1] for p in parts])
        mid = np.concatenate([mid[keep]] + [p[2] for p in parts])
        order = np.argsort(mid, kind="stable")
        left, right, mid = left[order], right[order], mid[order]
    elif excluded:
        # unrefined mesh: cut the removed neighbourhood out of the two cells at 0
        lim = excluded * (1 + 1e-9)
        right = np.where((right > -lim) & (right <= 0), -lim, right)
        left = np.where((left < lim) & (left >= 0), lim, left)
        ok = right > left
        left, right = left[ok], right[ok]
        mid = 0.5 * (left + right)
    return left, right, mid


@dataclass(frozen=True, eq=False)
class CellNodes:
    """Boundary values at cell edges and midpoints, in angle order.

    Consecutive nodes bound a sub-cell of mass ``weight[i]``; sub-cells that
    bridge a removed neighbourhood carry zero mass.
    """

    t: np.ndarray
    log_modulus: np.ndarray
    arg: np.ndarray          # continuous (unreduced) argument
    weight: np.ndarray       # len(t) - 1


@dataclass(frozen=True, eq=False)
class BoundarySample:
    t: np.ndarray
    log_modulus: np.ndarray
    arg: np.ndarray          # in [0, 2 pi)
    weight: np.ndarray       # sums to 1 up to removed neighbourhoods
    n_points: int            # equispaced / random base count
    seed: object
    nodes: CellNodes | None = None

    @property
    def values(self):
        with np.errstate(under="ignore"):
            return np.exp(self.log_modulus + 1j * self.arg)

    @property
    def size(self):
        return self.t.size

    @property
    def on_circle_fraction(self) -> float:
        """Mass with ``|value| >= 1 - 1e-12`` (diagnostic)."""
        return float(self.weight[self.log_modulus >= math.log1p(-1e-12)].sum())


def _evaluate(symbol, t):
    lb = np.asarray(symbol.log_boundary(t), dtype=complex)
    return np.minimum(lb.real, 0.0), lb.imag


def sample_boundary(symbol, n_points: int, seed="grid", *, refine: bool = True,
                    refine_ratio: float = 2.0 ** -8, t_min: float | None = None) -> BoundarySample:
    """Evaluate the symbol's boundary values on a deterministic mesh or iid angles.

    ``seed="grid"``: midpoints of ``n_points`` equal cells, refined
    geometrically down to ``t_min`` around each touch point; values at the
    cell edges are kept too, for the cell quadrature in :func:`rho_profile`.
    Integer seed: ``n_points`` iid uniform angles with equal weights; draws
    inside the symbol's excluded neighbourhood are redrawn.
    """
    if n_points < 10_000:
        raise ValueError("n_points must be >= 1e4")
    excl = float(getattr(symbol, "excluded", 0.0))
    if seed != "grid":
        rng = np.random.default_rng(int(seed))
        t = rng.uniform(-math.pi, math.pi, n_points)
        while excl:
            bad = np.abs(t) < excl
            if not bad.any():
                break
            t[bad] = rng.uniform(-math.pi, math.pi, int(bad.sum()))
        t.sort()
        w = np.full(n_points, 1.0 / n_points)
        lm, arg = _evaluate(symbol, t)
        return BoundarySample(t, lm, np.remainder(arg, TWO_PI), w, int(n_points), seed)

    if n_points % 2:
        raise ValueError("grid sampling needs an even n_points")
    touch = tuple(symbol.touch_points) if refine else ()
    lo = t_min if t_min is not None else 1e-300
    lo = max(lo, excl * (1 + 1e-9))
    left, right, mid = _mesh(n_points, touch, refine_ratio, lo, excl)
    scale = np.maximum(np.abs(right[:-1]), np.abs(left[1:]))
    gap = left[1:] - right[:-1] > 1e-12 * scale
    # joins between uniform and refined blocks differ only by rounding
    right = right.copy()
    right[:-1] = np.where(gap, right[:-1], left[1:])
    # nodes: left_i, mid_i, [right_i if a gap follows], ..., right_last
    count = np.append(2 + gap.astype(int), 3)
    pos = np.concatenate([[0], np.cumsum(count)[:-1]])
    node_t = np.empty(int(count.sum()))
    node_t[pos] = left
    node_t[pos + 1] = mid
    tail = np.flatnonzero(np.append(gap, True))
    node_t[pos[tail] + 2] = right[tail]
    lm_all, arg_all = _evaluate(symbol, node_t)
    sub_w = np.diff(node_t) / TWO_PI
    bridge = pos[tail[:-1]] + 2
    sub_w[bridge] = 0.0
    nodes = CellNodes(node_t, lm_all, arg_all, sub_w)
    w = (right - left) / TWO_PI
    return BoundarySample(mid, lm_all[pos + 1], np.remainder(arg_all[pos + 1], TWO_PI), w,
                          int(n_points), seed, nodes)


# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CarlesonProfile:
    h: np.ndarray
    rho: np.ndarray
    stderr: np.ndarray
    counts: np.ndarray       # sample points in the maximising window
    n_centers: np.ndarray    # candidate window positions examined
    n_points: int
    a: float = 1.0           # radial distortion: |z| >= 1 - a h
    b: float = 1.0           # angular distortion: |arg| <= b h

    @property
    def usable(self):
        return (self.counts >= MIN_COUNT) & (self.rho > 0)

    def log_rho_at(self, log_h):
        """log rho at arbitrary heights: log-log interpolation inside the grid,
        fitted power law outside it, capped at rho = 1."""
        ok = self.usable
        lh, lr = np.log(self.h[ok]), np.log(self.rho[ok])
        if lh.size < 2:
            raise ValueError("profile has fewer than two usable heights")
        slope, icpt = np.polyfit(lh, lr, 1)
        x = np.asarray(log_h, dtype=float)
        inside = np.interp(x, lh, lr)
        out = np.where((x < lh[0]) | (x > lh[-1]), slope * x + icpt, inside)
        out = np.minimum(out, 0.0)
        return out if np.ndim(out) else float(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("h,rho,stderr,n_points\n")
        for h, r, s in zip(self.h, self.rho, self.stderr):
            buf.write(f"{h:.17g},{r:.17g},{s:.17g},{self.n_points}\n")
        return buf.getvalue()


def resolution_floor(sample: BoundarySample) -> float:
    """Ten times the smallest cell weight; ``10 / n`` on an unrefined mesh."""
    return MIN_COUNT * float(sample.weight[sample.weight > 0].min())


def default_h_grid(sample: BoundarySample, points: int = 40, h_min: float = 1e-4, h_max: float = 0.5):
    return np.geomspace(max(h_min, 1.01 * resolution_floor(sample)), h_max, points)


def _window_sup(args, w, w2, width):
    """Max weight over arcs [args_i, args_i + width] on the circle."""
    k = args.size
    if k == 0:
        return 0.0, 0.0, 0, 0
    if width >= TWO_PI:
        return float(w.sum()), float(math.sqrt(w2.sum())), k, 1
    a2 = np.concatenate([args, args + TWO_PI])
    cw = np.concatenate([[0.0], np.cumsum(np.concatenate([w, w]))])
    cw2 = np.concatenate([[0.0], np.cumsum(np.concatenate([w2, w2]))])
    start = np.arange(k)
    end = np.minimum(np.searchsorted(a2, args + width, side="right"), start + k)
    mass = cw[end] - cw[start]
    i = int(np.argmax(mass))
    return float(mass[i]), float(math.sqrt(max(cw2[end[i]] - cw2[i], 0.0))), int(end[i] - i), k


def _arc_events(lo, length, weight, owner):
    """Split cell images into point masses, full turns and sub-2pi arcs.

    Returns sorted linear events ``(pos, slope, owner)``, point masses
    ``(pos, weight, owner)`` and per-owner uniform density.
    """
    tiny = length <= 1e-13
    pts = (np.remainder(lo[tiny], TWO_PI), weight[tiny], owner[tiny])
    lo, length, weight, owner = lo[~tiny], length[~tiny], weight[~tiny], owner[~tiny]
    dens = weight / length
    turns = np.floor(length / TWO_PI)
    rem = length - TWO_PI * turns
    uniform = (owner, dens * turns)
    start = np.remainder(lo, TWO_PI)
    end = start + rem
    wraps = end > TWO_PI
    pos = np.concatenate([start, np.where(wraps, TWO_PI, end), np.zeros(int(wraps.sum())), end[wraps] - TWO_PI])
    slope = np.concatenate([dens, -dens, dens[wraps], -dens[wraps]])
    own = np.concatenate([owner, owner, owner[wraps], owner[wraps]])
    order = np.argsort(pos, kind="stable")
    porder = np.argsort(pts[0], kind="stable")
    return ((pos[order], slope[order], own[order]),
            tuple(a[porder] for a in pts), uniform)


class _CellMeasure:
    """Pushforward of the piecewise-linear boundary interpolant.

    Each sub-cell between consecutive nodes is mapped with ``log|phi|`` and
    ``arg phi`` linear in t, so its mass spreads uniformly over an arc.
    """

    def __init__(self, nodes: CellNodes, thresholds=()):
        live = nodes.weight > 0
        self.l0, self.l1 = nodes.log_modulus[:-1][live], nodes.log_modulus[1:][live]
        self.a0, self.a1 = nodes.arg[:-1][live], nodes.arg[1:][live]
        self.w = nodes.weight[live]
        k = self.w.size
        lo = np.minimum(self.a0, self.a1)
        length = np.abs(self.a1 - self.a0)
        (self.pos, self.slope, self.own), (self.ppos, self.pw, self.pown), (uo, ud) = \
            _arc_events(lo, length, self.w, np.arange(k))
        self.udens = np.bincount(uo, weights=ud, minlength=k)
        self.span = self.a1 - self.a0
        # a cell is fully selected iff its lower endpoint clears the threshold
        self.level = np.minimum(self.l0, self.l1)
        self.ev_level = self.level[self.own]
        self.pt_level = self.level[self.pown]
        self._cache = (None, None)
        self._band_pieces(np.unique(np.asarray(thresholds, dtype=float))[::-1])

    def _band_pieces(self, thr):
        """Split events into level bands ``[thr_k, thr_{k-1})``.

        The fully selected cells at ``thr_k`` are exactly bands ``0..k``.
        Bands are pushed on a stack as thresholds descend, and neighbours of
        similar size are merged, so each event is re-sorted O(log K) times
        and a CDF has O(log K) parts.
        """
        self._thr = thr
        self._stack = []
        self._next = 0
        if thr.size == 0:
            return

        def band(level):
            return thr.size - np.searchsorted(thr[::-1], level, side="right")
        ev_band, pt_band = band(self.ev_level), band(self.pt_level)
        self._u_band = np.bincount(band(self.level), weights=self.udens, minlength=thr.size + 1)
        self._ev_order = np.argsort(ev_band, kind="stable")
        self._pt_order = np.argsort(pt_band, kind="stable")
        self._ev_cut = np.searchsorted(ev_band[self._ev_order], np.arange(thr.size + 1))
        self._pt_cut = np.searchsorted(pt_band[self._pt_order], np.arange(thr.size + 1))

    def _push_band(self, k):
        e = self._ev_order[self._ev_cut[k]:self._ev_cut[k + 1]]
        q = self._pt_order[self._pt_cut[k]:self._pt_cut[k + 1]]
        stack = self._stack
        stack.append([e, q, float(self._u_band[k]), None])
        while len(stack) > 1 and stack[-2][0].size + stack[-2][1].size <= 2 * (stack[-1][0].size + stack[-1][1].size):
            (e1, q1, u1, _), (e2, q2, u2, _) = stack.pop(-2), stack.pop()
            # event indices are in position order, so merged indices stay sorted
            stack.append([np.sort(np.concatenate([e1, e2])), np.sort(np.concatenate([q1, q2])), u1 + u2, None])
        for ent in stack:
            if ent[3] is None:
                e, q, u, _ = ent
                ent[3] = _Piecewise(self.pos[e], self.slope[e], self.ppos[q], self.pw[q], u)

    def _banded(self, key):
        """Parts of G for a profiled threshold, or None if it cannot be reached."""
        thr = self._thr
        if thr.size == 0 or key not in thr or (self._next and key > thr[self._next - 1]):
            return None
        while self._next < thr.size and thr[self._next] >= key:
            self._push_band(self._next)
            self._next += 1
        return [ent[3] for ent in self._stack]

    def cdf(self, threshold: float):
        """G(x): selected mass with argument in [0, x], x in [0, 2 pi]."""
        pieces = self._banded(float(threshold))
        if pieces is None:
            full = self.level >= threshold
            if self._cache[0] is None or not np.array_equal(self._cache[0], full):
                ev = self.ev_level >= threshold
                pt = self.pt_level >= threshold
                self._cache = (full, _Piecewise(self.pos[ev], self.slope[ev], self.ppos[pt], self.pw[pt],
                                                float(self.udens[full].sum())))
            pieces = [self._cache[1]]
        part = (self.l0 >= threshold) ^ (self.l1 >= threshold)
        if part.any():
            l0, l1 = self.l0[part], self.l1[part]
            u = np.clip((threshold - l0) / (l1 - l0), 0.0, 1.0)
            ua = np.where(l0 >= threshold, 0.0, u)
            ub = np.where(l0 >= threshold, u, 1.0)
            a = self.a0[part] + ua * self.span[part]
            b = self.a0[part] + ub * self.span[part]
            (pos, slope, _), (ppos, pw, _), (_, ud) = _arc_events(
                np.minimum(a, b), np.abs(b - a), self.w[part] * (ub - ua), np.arange(a.size))
            pieces.append(_Piecewise(pos, slope, ppos, pw, float(ud.sum())))
        if not pieces:
            pieces = [_Piecewise(np.empty(0), np.empty(0), np.empty(0), np.empty(0), 0.0)]
        return _Cdf(pieces)


class _Cdf:
    """Sum of :class:`_Piecewise` parts; piecewise linear between its breakpoints."""

    def __init__(self, pieces):
        self.pieces = pieces

    def __call__(self, x):
        out = self.pieces[0](x).copy()
        for pc in self.pieces[1:]:
            out += pc(x)
        return out

    def breakpoints_in(self, lo, hi):
        """Breakpoints inside the arcs ``[lo_i, hi_i]`` (taken mod 2 pi, each shorter than 2 pi)."""
        span = np.asarray(hi) - np.asarray(lo)
        lo = np.remainder(lo, TWO_PI)
        hi = lo + span
        wrap = hi > TWO_PI
        a = np.concatenate([lo, np.zeros(int(wrap.sum()))])
        b = np.concatenate([np.minimum(hi, TWO_PI), hi[wrap] - TWO_PI])
        found = []
        for pc in self.pieces:
            for arr in (pc.pos, pc.ppos):
                if arr.size:
                    i0 = np.searchsorted(arr, a, side="left")
                    i1 = np.searchsorted(arr, b, side="right")
                    n = i1 - i0
                    if n.sum():
                        idx = np.repeat(i0 - np.cumsum(n) + n, n) + np.arange(int(n.sum()))
                        found.append(arr[idx])
        return np.concatenate(found) if found else np.empty(0)

    def count_in(self, lo, hi):
        lo = np.remainder(lo, TWO_PI)
        span = np.asarray(hi) - np.asarray(lo)
        total = 0
        for pc in self.pieces:
            for arr in (pc.pos, pc.ppos):
                if arr.size:
                    c0 = np.searchsorted(arr, lo, side="left")
                    end = lo + span
                    c1 = np.searchsorted(arr, np.minimum(end, TWO_PI), side="right")
                    extra = np.where(end > TWO_PI, np.searchsorted(arr, end - TWO_PI, side="right"), 0)
                    total += int((c1 - c0 + extra).sum())
        return total


class _Piecewise:
    """Cumulative mass of sorted linear events plus point masses plus a uniform part.

    Stores the density after each event and the mass accumulated up to each
    event, so evaluation adds only nonnegative terms.
    """

    def __init__(self, pos, slope, ppos, pw, uniform):
        self.pos = pos
        dens = np.cumsum(slope, dtype=np.longdouble)
        self.dens = np.maximum(dens.astype(float), 0.0)
        steps = dens[:-1] * np.diff(pos).astype(np.longdouble)
        self.acc = np.concatenate([[0.0], np.cumsum(steps).astype(float)])
        self.ppos = ppos
        self.pacc = np.cumsum(pw)
        self.uniform = uniform

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = x * self.uniform
        if self.pos.size:
            i = np.searchsorted(self.pos, x, side="right") - 1
            ok = i >= 0
            ic = np.maximum(i, 0)
            out = out + np.where(ok, self.acc[ic] + self.dens[ic] * (x - self.pos[ic]), 0.0)
        if self.ppos.size:
            j = np.searchsorted(self.ppos, x, side="right") - 1
            out = out + np.where(j >= 0, self.pacc[np.maximum(j, 0)], 0.0)
        return out


def _sup_window(G, width: float, tol: float, finest: float = 1.0 / 64, switch: float = 8.0):
    """max over xi of G-mass in [xi, xi + width] on the circle.

    Branch and bound on a halving grid of window starts: the mass of
    ``[xi, xi + delta + width]`` bounds every window starting in
    ``[xi, xi + delta]``.  Cells whose bound is within a relative ``tol`` of
    the best window are dropped.  The window mass is linear in the start
    between breakpoints of G, so once the surviving cells hold at most
    ``switch`` times as many breakpoints as there are surviving starts the
    breakpoints themselves are scanned.  Otherwise the search stops when the
    grid is finer than ``finest * width``.
    """
    total = float(G(np.array([TWO_PI]))[0])
    if width >= TWO_PI or total <= 0:
        return total, 0.0, 1

    def cdf_circle(x):
        # G on the real line: turns add total mass
        q = np.floor(x / TWO_PI)
        return G(x - q * TWO_PI) + q * total

    delta = TWO_PI / 64
    xi = np.arange(64) * delta
    best, best_xi, evaluated = -1.0, 0.0, 0
    for _ in range(200):
        g0 = cdf_circle(xi)
        low = cdf_circle(xi + width) - g0
        up = np.minimum(cdf_circle(xi + width + delta) - g0, total)
        evaluated += xi.size
        k = int(np.argmax(low))
        if low[k] > best:
            best, best_xi = float(low[k]), float(xi[k])
        keep = up > best * (1 + tol)
        if not keep.any():
            break
        lo, hi = xi[keep], xi[keep] + delta
        n_cand = G.count_in(lo, hi) + G.count_in(lo + width, hi + width)
        if delta <= finest * width and n_cand > switch * lo.size:
            # spacing below finest * width: the bound gap is at most the mass of one spacing
            break
        if n_cand <= switch * lo.size:
            # window mass is linear in xi between breakpoints: finish exactly
            cand = np.concatenate([G.breakpoints_in(lo, hi), G.breakpoints_in(lo + width, hi + width) - width])
            cand.sort()
            if cand.size:
                mass = cdf_circle(cand + width) - cdf_circle(cand)
                evaluated += cand.size
                k = int(np.argmax(mass))
                if mass[k] > best:
                    best, best_xi = float(mass[k]), float(np.remainder(cand[k], TWO_PI))
            break
        delta /= 2
        xi = np.sort(np.concatenate([xi[keep], xi[keep] + delta]))
    return max(best, 0.0), best_xi, evaluated


def rho_profile(sample: BoundarySample, h_grid=None, *, a: float = 1.0, b: float = 1.0,
                method: str = "cells", tol: float = 1e-3) -> CarlesonProfile:
    """Empirical ``rho(h) = sup_xi m_phi(W(xi, h))`` with
    ``W = {|z| >= 1 - a h, |arg(z conj(xi))| <= b h}``.

    ``method="points"`` treats the sample as point masses; window starts
    range over every selected sample argument, which gives the exact sup of
    the empirical measure.  ``method="cells"`` (grid samples only) pushes the
    piecewise-linear interpolant of the boundary values forward instead and
    locates the sup to relative accuracy ``tol``; it stays accurate when
    the maximising window holds only a few mesh cells.
    """
    h = default_h_grid(sample) if h_grid is None else np.asarray(h_grid, dtype=float)
    floor = resolution_floor(sample)
    if np.any(h <= floor) or np.any(h >= 1.0 / a + 1e-15):
        raise ValueError(f"heights must lie in ({floor:.3g}, 1/a); below the floor windows hold < 10 points")
    if np.any(np.diff(h) <= 0):
        raise ValueError("h_grid must be increasing")
    if method not in ("points", "cells"):
        raise ValueError("method must be 'points' or 'cells'")
    if method == "cells" and sample.nodes is None:
        raise ValueError("cell quadrature needs a grid sample")
    order = np.argsort(sample.arg, kind="stable")
    args = sample.arg[order]
    lm = sample.log_modulus[order]
    w = sample.weight[order]
    w2 = w * w
    thresholds = [math.log1p(-a * hh) if a * hh < 1 else -math.inf for hh in h]
    cells = _CellMeasure(sample.nodes, thresholds) if method == "cells" else None
    out = np.zeros((4, h.size))
    for i, hh in enumerate(h):
        thr = thresholds[i]
        sel = lm >= thr
        width = 2.0 * b * hh
        if cells is None:
            out[:, i] = _window_sup(args[sel], w[sel], w2[sel], width)
            continue
        best, xi, evaluated = _sup_window(cells.cdf(thr), width, tol)
        # error bar and count from the mesh midpoints inside the chosen window
        inside = sel & (np.remainder(args - xi, TWO_PI) <= width)
        out[:, i] = best, math.sqrt(w2[inside].sum()), inside.sum(), evaluated
    rho = np.clip(out[0], 0.0, 1.0)
    return CarlesonProfile(h, rho, out[1], out[2].astype(int), out[3].astype(int), sample.n_points, a, b)


def fit_exponent(profile: CarlesonProfile, correction: float | None = None, h_range=None):
    """Least-squares slope of ``log rho + theta log log(1/h)`` against ``log h``.

    Returns ``(slope, r2)``.  Only heights whose maximising window holds at
    least 10 sample points enter the fit.
    """
    ok = profile.usable
    if h_range is not None:
        ok &= (profile.h >= h_range[0] * (1 - 1e-12)) & (profile.h <= h_range[1] * (1 + 1e-12))
    if ok.sum() < 8:
        raise ValueError(f"only {int(ok.sum())} usable heights; need 8")
    x = np.log(profile.h[ok])
    y = np.log(profile.rho[ok])
    if correction:
        y = y + correction * np.log(-x)
    slope, icpt = np.polyfit(x, y, 1)
    resid = y - (slope * x + icpt)
    r2 = 1.0 - resid.dot(resid) / max(((y - y.mean()) ** 2).sum(), 1e-300)
    return float(slope), float(r2)


# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class DyadicMeasure:
    """``masses[n-1][j] = m_phi(W_{n,j})`` for n = 1..depth, with
    ``W_{n,j} = {1 - 2^-n <= |z| < 1, 2 pi j/2^n <= arg z < 2 pi (j+1)/2^n}``."""

    depth: int
    masses: list
    sq_weights: list         # per-cell sum of squared weights, for error bars

    def row(self, n: int) -> np.ndarray:
        return self.masses[n - 1]

    def sigma(self, n: int) -> np.ndarray:
        return np.sqrt(self.sq_weights[n - 1])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,j,mass\n")
        for n, row in enumerate(self.masses, start=1):
            for j in np.flatnonzero(row):
                buf.write(f"{n},{j},{row[j]:.17g}\n")
        return buf.getvalue()


def radial_level(log_modulus):
    """Largest n with ``1 - |z| <= 2^-n`` (inf on the circle)."""
    gap = -np.expm1(np.asarray(log_modulus, dtype=float))
    with np.errstate(divide="ignore"):
        return np.floor(-np.log2(gap))


def dyadic_measures(sample: BoundarySample, depth: int) -> DyadicMeasure:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if 2 ** depth > sample.n_points / 100:
        raise ValueError("depth too deep: need 2^depth <= n_points / 100")
    level = radial_level(sample.log_modulus)
    inside = np.isfinite(level)
    lev = level[inside]
    arg = sample.arg[inside]
    w = sample.weight[inside]
    masses, sq = [], []
    for n in range(1, depth + 1):
        sel = lev >= n
        j = np.minimum((arg[sel] * (2 ** n / TWO_PI)).astype(np.int64), 2 ** n - 1)
        masses.append(np.bincount(j, weights=w[sel], minlength=2 ** n))
        sq.append(np.bincount(j, weights=w[sel] ** 2, minlength=2 ** n))
    return DyadicMeasure(depth, masses, sq)


@dataclass(frozen=True)
class LueckingSums:
    p: float
    level_terms: np.ndarray
    partial_sums: np.ndarray
    ratios: np.ndarray       # level n term / level n-1 term, n = 2..N
    verdict: str

    def to_dict(self):
        return {"p": self.p, "level_terms": self.level_terms.tolist(),
                "partial_sums": self.partial_sums.tolist(), "ratios": self.ratios.tolist(),
                "verdict": self.verdict}


def luecking_partial_sums(dm: DyadicMeasure, p: float) -> LueckingSums:
    """Level terms ``sum_j 2^{np/2} m_{n,j}^{p/2}`` and their running sums."""
    if p <= 0:
        raise ValueError("p must be positive")
    terms = np.array([
        float(np.sum(np.exp(0.5 * p * (n * math.log(2.0) + np.log(row[row > 0])))))
        for n, row in enumerate(dm.masses, start=1)
    ])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(terms[:-1] > 0, terms[1:] / np.where(terms[:-1] > 0, terms[:-1], 1.0), 0.0)
    tail = ratios[-3:]
    if tail.size == 0:
        verdict = "inconclusive"
    elif np.all(tail < 0.95):
        verdict = "converging"
    elif np.all(tail > 1.05):
        verdict = "diverging"
    else:
        verdict = "inconclusive"
    return LueckingSums(float(p), terms, np.cumsum(terms), ratios, verdict)
