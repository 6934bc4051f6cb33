"""Numerical hunt for counterexamples to the n-term Specht-refined AM-GM bound.

The gap under study is ``sum(w*a) - S(h**r) * prod(a**w)`` with
``h = max(a)/min(a)`` and ``r = min(w)``.  For two terms it is known to be
non-negative; for three or more it is open.  A run evaluates fixed corner
probes, seeded random draws, and pattern-search descents started from the
best draws and from fresh random points.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError, InputError
from .scalar import specht_ratio

__all__ = [
    "Certification",
    "GapSample",
    "SearchConfig",
    "SearchResult",
    "SimplexWeights",
    "certify",
    "gap",
    "gap_batch",
    "local_descent",
    "random_search",
    "run_certification",
]

W_MIN = 1e-9
CORNER_EPS = 1e-6
NEG_TOL = 1e-9
MIN_STEP = 1e-10
CHUNK = 1 << 16
# initial pattern step: fraction of the log box width for points, log-units for weights
POINT_STEP = 0.25
WEIGHT_STEP = 1.0


@dataclass(frozen=True)
class SimplexWeights:
    w: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.w)
        object.__setattr__(self, "w", w)
        if len(w) < 2:
            raise InputError("need at least two weights")
        if any(not v > 0.0 for v in w):
            raise DomainError("weights must be positive")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise InputError(f"weights must sum to 1, got {math.fsum(w)!r}")

    @property
    def n(self) -> int:
        return len(self.w)


@dataclass(frozen=True)
class GapSample:
    points: tuple[float, ...]
    weights: SimplexWeights
    h: float
    r: float
    gap: float
    lhs: float
    rhs: float

    @property
    def scale(self) -> float:
        return 1.0 + abs(self.lhs) + abs(self.rhs)

    @property
    def is_negative(self) -> bool:
        return self.gap < -NEG_TOL * self.scale


@dataclass(frozen=True)
class SearchConfig:
    n: int = 3
    box_lo: float = 0.1
    box_hi: float = 10.0
    samples: int = 100_000
    restarts: int = 20
    descent_iters: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise InputError(f"n must be at least 2, got {self.n}")
        if not (math.isfinite(self.box_lo) and math.isfinite(self.box_hi) and 0.0 < self.box_lo < self.box_hi):
            raise InputError(f"box must satisfy 0 < lo < hi, got [{self.box_lo}, {self.box_hi}]")
        if self.samples < 0 or self.restarts < 0 or self.descent_iters < 0:
            raise InputError("counts must be non-negative")


@dataclass(frozen=True)
class SearchResult:
    min_gap: float
    argmin: GapSample
    negatives_found: int
    total_evaluated: int
    seed: int


def _seq_sum(x):
    # fixed left-to-right accumulation over the last axis
    acc = x[..., 0].copy()
    for j in range(1, x.shape[-1]):
        acc += x[..., j]
    return acc


def gap_batch(points, weights):
    """Evaluate the gap for each row of ``points`` and ``weights``.

    Rows are sorted by (point, weight) before accumulation so that the
    result is bitwise invariant under simultaneous permutation.

    Returns ``(gap, lhs, rhs, h, r)`` arrays.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    weights = np.atleast_2d(np.asarray(weights, dtype=float))
    if points.shape != weights.shape:
        raise InputError(f"points {points.shape} and weights {weights.shape} differ in shape")
    if not np.all(np.isfinite(points)) or np.any(points <= 0.0):
        raise InputError("points must be positive and finite")
    order = np.lexsort((weights, points), axis=-1)
    a = np.take_along_axis(points, order, axis=-1)
    w = np.take_along_axis(weights, order, axis=-1)
    lhs = _seq_sum(w * a)
    log_geo = _seq_sum(w * np.log(a))
    h = a[:, -1] / a[:, 0]
    r = w.min(axis=-1)
    rhs = specht_ratio(h**r) * np.exp(log_geo)
    return lhs - rhs, lhs, rhs, h, r


def _sample(points_row, weights_row, g, lhs, rhs, h, r) -> GapSample:
    return GapSample(tuple(float(v) for v in points_row), SimplexWeights(tuple(weights_row)),
                     float(h), float(r), float(g), float(lhs), float(rhs))


def gap(points, weights) -> GapSample:
    """Gap of a single configuration."""
    if not isinstance(weights, SimplexWeights):
        weights = SimplexWeights(tuple(weights))
    points = np.asarray(points, dtype=float)
    if points.ndim != 1 or points.size != weights.n:
        raise InputError("points and weights must have the same length")
    g, lhs, rhs, h, r = gap_batch(points, weights.w)
    return _sample(points, weights.w, g[0], lhs[0], rhs[0], h[0], r[0])


def _negative_mask(g, lhs, rhs):
    return g < -NEG_TOL * (1.0 + np.abs(lhs) + np.abs(rhs))


def _to_simplex(w):
    # positive rows -> rows summing to one with every entry >= W_MIN
    n = w.shape[-1]
    w = w / w.sum(axis=-1, keepdims=True)
    return W_MIN + (1.0 - n * W_MIN) * w


def corner_probes(config: SearchConfig):
    """Box corners crossed with extreme and barycentric weight splits."""
    n = config.n
    corners = np.array(list(itertools.product((config.box_lo, config.box_hi), repeat=n)))
    splits = np.full((n, n), CORNER_EPS)
    np.fill_diagonal(splits, 1.0 - (n - 1) * CORNER_EPS)
    splits = np.vstack([splits, np.full(n, 1.0 / n)])
    pts = np.repeat(corners, len(splits), axis=0)
    wts = np.tile(splits, (len(corners), 1))
    return pts, wts


def _draw(rng, k, config):
    lo, hi = math.log(config.box_lo), math.log(config.box_hi)
    pts = np.exp(rng.uniform(lo, hi, (k, config.n)))
    np.clip(pts, config.box_lo, config.box_hi, out=pts)
    wts = _to_simplex(rng.standard_exponential((k, config.n)))
    return pts, wts


class _Tracker:
    """Running minimum, negative count and best-k pool over evaluated batches."""

    def __init__(self, keep: int):
        self.keep = keep
        self.total = 0
        self.negatives = 0
        self.best = None
        self.pool_gap = np.empty(0)
        self.pool_pts = None
        self.pool_wts = None

    def add(self, pts, wts):
        g, lhs, rhs, h, r = gap_batch(pts, wts)
        self.total += g.size
        self.negatives += int(np.count_nonzero(_negative_mask(g, lhs, rhs)))
        i = int(np.argmin(g))
        if self.best is None or g[i] < self.best.gap:
            self.best = _sample(pts[i], wts[i], g[i], lhs[i], rhs[i], h[i], r[i])
        if self.keep:
            gg = np.concatenate([self.pool_gap, g])
            pp = pts if self.pool_pts is None else np.vstack([self.pool_pts, pts])
            ww = wts if self.pool_wts is None else np.vstack([self.pool_wts, wts])
            idx = np.argsort(gg, kind="stable")[: self.keep]
            self.pool_gap, self.pool_pts, self.pool_wts = gg[idx], pp[idx], ww[idx]


def _descend(start_pts, start_wts, config: SearchConfig):
    """Pattern search from one start; returns ``(best_sample, evaluations, negatives)``."""
    n = config.n
    log_lo, log_hi = math.log(config.box_lo), math.log(config.box_hi)
    width = log_hi - log_lo
    x = np.clip(np.log(np.asarray(start_pts, dtype=float)), log_lo, log_hi)
    lw = np.log(np.asarray(start_wts, dtype=float))
    g, lhs, rhs, h, r = gap_batch(np.exp(x), _to_simplex(np.exp(lw))[None, :])
    best = _sample(np.exp(x), _to_simplex(np.exp(lw)), g[0], lhs[0], rhs[0], h[0], r[0])
    evals, negatives = 1, int(_negative_mask(g, lhs, rhs)[0])
    step = 1.0
    eye = np.eye(n)
    signs = np.array([1.0, -1.0])
    for _ in range(config.descent_iters):
        if step < MIN_STEP:
            break
        dx = (signs[:, None, None] * eye[None] * step * POINT_STEP * width).reshape(-1, n)
        dw = (signs[:, None, None] * eye[None] * step * WEIGHT_STEP).reshape(-1, n)
        cand_x = np.vstack([np.clip(x + dx, log_lo, log_hi), np.broadcast_to(x, dw.shape)])
        cand_lw = np.vstack([np.broadcast_to(lw, dx.shape), lw + dw])
        pts = np.exp(cand_x)
        np.clip(pts, config.box_lo, config.box_hi, out=pts)
        wts = _to_simplex(np.exp(cand_lw - cand_lw.max(axis=-1, keepdims=True)))
        g, lhs, rhs, h, r = gap_batch(pts, wts)
        evals += g.size
        negatives += int(np.count_nonzero(_negative_mask(g, lhs, rhs)))
        i = int(np.argmin(g))
        if g[i] < best.gap:
            best = _sample(pts[i], wts[i], g[i], lhs[i], rhs[i], h[i], r[i])
            x, lw = np.log(pts[i]), np.log(wts[i])
        else:
            step *= 0.5
    return best, evals, negatives


def local_descent(start: GapSample, config: SearchConfig) -> GapSample:
    """Derivative-free coordinate pattern search on the gap.

    Points move in log coordinates inside the box; weights move in log
    coordinates and are renormalised onto the interior of the simplex after
    every trial step.  The step halves whenever no neighbour improves and
    the search stops after ``config.descent_iters`` iterations or once the
    step falls below ``1e-10``.  The returned gap never exceeds the start's.
    """
    pts = np.asarray(start.points, dtype=float)
    if pts.size != config.n:
        raise InputError("start sample dimension does not match config.n")
    if np.any(pts < config.box_lo) or np.any(pts > config.box_hi):
        raise InputError("start sample lies outside the search box")
    best, _, _ = _descend(pts, np.asarray(start.weights.w), config)
    return best if best.gap < start.gap else start


def _restart_start(k, tracker, config):
    pool = tracker.pool_gap.size
    if k % 2 == 0 and k // 2 < pool:
        return tracker.pool_pts[k // 2], tracker.pool_wts[k // 2]
    rng = np.random.default_rng([config.seed, k])
    pts, wts = _draw(rng, 1, config)
    return pts[0], wts[0]


def random_search(config: SearchConfig, workers: int = 1) -> SearchResult:
    """Corner probes, ``config.samples`` random draws, then ``config.restarts`` descents.

    Random draws come from one generator seeded with ``config.seed`` in
    fixed-size chunks; restart ``k`` uses its own generator seeded with
    ``(seed, k)``.  Descents may run on ``workers`` threads; the reduction is
    done in restart order, so the result does not depend on ``workers``.
    """
    tracker = _Tracker(keep=(config.restarts + 1) // 2)
    tracker.add(*corner_probes(config))
    rng = np.random.default_rng(config.seed)
    left = config.samples
    while left > 0:
        k = min(CHUNK, left)
        tracker.add(*_draw(rng, k, config))
        left -= k

    starts = [_restart_start(k, tracker, config) for k in range(config.restarts)]

    def run(start):
        return _descend(start[0], start[1], config)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(s) for s in starts]

    best = tracker.best
    total, negatives = tracker.total, tracker.negatives
    for sample, evals, neg in outcomes:
        total += evals
        negatives += neg
        if sample.gap < best.gap:
            best = sample
    return SearchResult(best.gap, best, negatives, total, config.seed)


def recheck_gap(sample: GapSample) -> float:
    """Recompute a sample's gap with compensated summation."""
    a = sample.points
    w = sample.weights.w
    lhs = math.fsum(wi * ai for wi, ai in zip(w, a))
    log_geo = math.fsum(wi * math.log(ai) for wi, ai in zip(w, a))
    h = max(a) / min(a)
    r = min(w)
    return lhs - specht_ratio(h**r) * math.exp(log_geo)


@dataclass(frozen=True)
class Certification:
    config: SearchConfig
    result: SearchResult
    recheck: float | None
    candidate: bool

    @property
    def verdict(self) -> str:
        return "CANDIDATE COUNTEREXAMPLE" if self.candidate else "no counterexample found"

    def to_dict(self) -> dict:
        s = self.result.argmin
        return {
            "config": asdict(self.config),
            "result": {
                "total_evaluated": self.result.total_evaluated,
                "negatives_found": self.result.negatives_found,
                "min_gap": self.result.min_gap,
                "argmin": {
                    "points": list(s.points),
                    "weights": list(s.weights.w),
                    "h": s.h,
                    "r": s.r,
                    "gap": s.gap,
                    "lhs": s.lhs,
                    "rhs": s.rhs,
                },
                "recheck_gap": self.recheck,
                "seed": self.result.seed,
            },
            "verdict": self.verdict,
            "needs_high_precision_confirmation": self.candidate,
        }

    def text(self) -> str:
        c, res, s = self.config, self.result, self.result.argmin
        lines = [
            f"n                 {c.n}",
            f"box               [{c.box_lo!r}, {c.box_hi!r}]",
            f"seed              {c.seed}",
            f"samples           {c.samples}",
            f"restarts          {c.restarts}",
            f"descent_iters     {c.descent_iters}",
            f"total_evaluated   {res.total_evaluated}",
            f"negatives_found   {res.negatives_found}",
            f"min_gap           {res.min_gap:.17g}",
            f"argmin.points     {', '.join(f'{v:.17g}' for v in s.points)}",
            f"argmin.weights    {', '.join(f'{v:.17g}' for v in s.weights.w)}",
            f"argmin.h          {s.h:.17g}",
            f"argmin.r          {s.r:.17g}",
        ]
        if self.recheck is not None:
            lines.append(f"recheck_gap       {self.recheck:.17g}")
        lines.append(f"verdict: {self.verdict}")
        if self.candidate:
            lines.append("flagged for manual high-precision confirmation")
        return "\n".join(lines)


def run_certification(config: SearchConfig, workers: int = 1) -> Certification:
    """Run a search and recheck any negative minimum with compensated sums."""
    result = random_search(config, workers=workers)
    s = result.argmin
    recheck = None
    candidate = False
    if result.negatives_found or s.is_negative:
        recheck = recheck_gap(s)
        candidate = recheck < -NEG_TOL * s.scale
    return Certification(config, result, recheck, candidate)


def certify(config: SearchConfig, workers: int = 1) -> str:
    """Text report of a full search, ending in a verdict line."""
    return run_certification(config, workers).text()
