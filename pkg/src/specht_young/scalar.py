"""Scalar weighted means, Specht's ratio and the Young-type bounds built on it.

Every numeric function here broadcasts over numpy arrays, so the same code
serves single evaluations and million-point sweeps.  The small dataclasses
(:class:`WeightedPair`, :class:`BoundComparison`, :class:`LemmaScanReport`)
wrap single instances for reporting.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError

__all__ = [
    "TAYLOR_THRESHOLD",
    "BoundKind",
    "BoundComparison",
    "LemmaId",
    "LemmaScanReport",
    "WeightedPair",
    "add_refined_lower_bound",
    "arithmetic_mean",
    "chain_gaps",
    "evaluate_scalar_chain",
    "geometric_mean",
    "harmonic_mean",
    "mult_refined_lower_bound",
    "refined_harmonic_bound",
    "reverse_young_upper_bound",
    "scan_lemma",
    "specht_ratio",
    "weighted_jensen_gap",
]

# |h - 1| at or below which the series replaces the closed form
TAYLOR_THRESHOLD = 1e-5

DEFAULT_TOL = 1e-10


def _specht_taylor(x):
    # S(1 + x) = 1 + x^2/8 - x^3/8 + 139 x^4/1152 + O(x^5)
    return 1.0 + x * x * (0.125 + x * (-0.125 + x * (139.0 / 1152.0)))


def _specht_direct(h):
    # S(h) = exp(L - 1) / L with L = log(h) / (h - 1).  For h in [1/2, 2] the
    # subtraction h - 1 is exact, so log1p(h - 1) is log(h) to full accuracy;
    # outside that window log(h) is used directly because fl(1 + (h - 1)) != h.
    x = h - 1.0
    near = (h >= 0.5) & (h <= 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_h = np.where(near, np.log1p(np.where(near, x, 0.0)), np.log(h))
        big_l = log_h / x
        return np.exp(big_l - 1.0) / big_l


def specht_ratio(h):
    """Specht's ratio ``S(h) = h**(1/(h-1)) / (e * log(h**(1/(h-1))))``.

    Accepts a scalar or an array of positive finite values.  ``S(1)`` is
    exactly 1; for ``|h - 1| <= TAYLOR_THRESHOLD`` a fourth-order series is
    used instead of the closed form, which cancels catastrophically there.

    Raises
    ------
    DomainError
        If any ``h`` is non-positive, NaN or infinite.
    """
    arr = np.asarray(h, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"Specht's ratio needs finite h > 0, got {h!r}")
    x = arr - 1.0
    small = np.abs(x) <= TAYLOR_THRESHOLD
    out = np.where(small, _specht_taylor(x), _specht_direct(np.where(small, 2.0, arr)))
    # S >= 1 holds mathematically; clip roundoff so callers can rely on it
    out = np.maximum(out, 1.0)
    if out.ndim == 0:
        return float(out)
    return out


def _weight_residual(nu):
    return np.minimum(nu, 1.0 - nu)


# the means are written relative to ``a`` so that a == b returns a exactly


def arithmetic_mean(a, b, nu):
    """``(1 - nu) * a + nu * b``."""
    # anchor on the heavier endpoint so nu near 0 or 1 cannot cancel
    d = np.subtract(b, a)
    return np.where(np.less_equal(nu, 0.5), a + nu * d, b - (1.0 - nu) * d)[()]


def geometric_mean(a, b, nu):
    """``a**(1 - nu) * b**nu``."""
    return a * np.power(np.divide(b, a), nu)


def harmonic_mean(a, b, nu):
    """``((1 - nu) / a + nu / b) ** -1``."""
    return a / ((1.0 - nu) + nu * np.divide(a, b))


def mult_refined_lower_bound(a, b, nu):
    """Specht-refined Young lower bound ``S((b/a)**r) * a**(1-nu) * b**nu``.

    ``r = min(nu, 1 - nu)``.  The bound sits between the weighted geometric
    and weighted arithmetic means.
    """
    r = _weight_residual(nu)
    return specht_ratio(np.power(np.divide(b, a), r)) * geometric_mean(a, b, nu)


def add_refined_lower_bound(a, b, nu):
    """Additive refinement ``a**(1-nu) * b**nu + r * (sqrt(a) - sqrt(b))**2``."""
    r = _weight_residual(nu)
    return geometric_mean(a, b, nu) + r * (np.sqrt(a) - np.sqrt(b)) ** 2


def reverse_young_upper_bound(a, b, nu):
    """Reverse Young upper bound ``S(a/b) * a**(1-nu) * b**nu``."""
    return specht_ratio(np.divide(a, b)) * geometric_mean(a, b, nu)


def refined_harmonic_bound(a, b, nu):
    """Specht-refined harmonic bound ``S((a/b)**r) * H``; never exceeds the geometric mean."""
    r = _weight_residual(nu)
    return specht_ratio(np.power(np.divide(a, b), r)) * harmonic_mean(a, b, nu)


@dataclass(frozen=True)
class WeightedPair:
    """Two positive reals and a weight ``nu`` in ``[0, 1]``."""

    a: float
    b: float
    nu: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
        if not (0.0 <= self.nu <= 1.0):
            raise DomainError(f"nu must lie in [0, 1], got {self.nu!r}")

    @property
    def r(self) -> float:
        return min(self.nu, 1.0 - self.nu)

    def arithmetic(self) -> float:
        return float(arithmetic_mean(self.a, self.b, self.nu))

    def geometric(self) -> float:
        return float(geometric_mean(self.a, self.b, self.nu))

    def harmonic(self) -> float:
        return float(harmonic_mean(self.a, self.b, self.nu))

    def mult_refined(self) -> float:
        return float(mult_refined_lower_bound(self.a, self.b, self.nu))

    def add_refined(self) -> float:
        return float(add_refined_lower_bound(self.a, self.b, self.nu))

    def reverse_young(self) -> float:
        return float(reverse_young_upper_bound(self.a, self.b, self.nu))

    def harmonic_refined(self) -> float:
        return float(refined_harmonic_bound(self.a, self.b, self.nu))


class BoundKind(enum.Enum):
    YOUNG_CLASSIC = "YoungClassic"
    REVERSE_YOUNG = "ReverseYoung"
    ADD_REFINED = "AddRefined"
    MULT_REFINED = "MultRefined"
    HARMONIC_CLASSIC = "HarmonicClassic"
    HARMONIC_REFINED = "HarmonicRefined"


def _holds(gap, lhs, rhs, tol):
    return gap >= -tol * (1.0 + np.abs(lhs) + np.abs(rhs))


@dataclass(frozen=True)
class BoundComparison:
    """One checked inequality ``lhs >= rhs``."""

    kind: BoundKind
    label: str
    lhs: float
    rhs: float
    gap: float
    holds: bool
    rel_tolerance: float

    @classmethod
    def of(cls, kind, label, lhs, rhs, tol):
        lhs, rhs = float(lhs), float(rhs)
        gap = lhs - rhs
        return cls(kind, label, lhs, rhs, gap, bool(_holds(gap, lhs, rhs, tol)), tol)


# (kind, label, lhs key, rhs key), top to bottom
CHAIN_LINKS = (
    (BoundKind.MULT_REFINED, "A >= MultRefined", "arithmetic", "mult_refined"),
    (BoundKind.ADD_REFINED, "A >= AddRefined", "arithmetic", "add_refined"),
    (BoundKind.MULT_REFINED, "MultRefined >= G", "mult_refined", "geometric"),
    (BoundKind.ADD_REFINED, "AddRefined >= G", "add_refined", "geometric"),
    (BoundKind.HARMONIC_REFINED, "G >= HarmonicRefined", "geometric", "harmonic_refined"),
    (BoundKind.HARMONIC_CLASSIC, "HarmonicRefined >= H", "harmonic_refined", "harmonic"),
    (BoundKind.REVERSE_YOUNG, "ReverseYoung >= A", "reverse_young", "arithmetic"),
)


def scalar_bounds(a, b, nu) -> dict:
    """All seven scalar quantities of the chain, keyed by name (broadcasts)."""
    return {
        "arithmetic": arithmetic_mean(a, b, nu),
        "geometric": geometric_mean(a, b, nu),
        "harmonic": harmonic_mean(a, b, nu),
        "mult_refined": mult_refined_lower_bound(a, b, nu),
        "add_refined": add_refined_lower_bound(a, b, nu),
        "reverse_young": reverse_young_upper_bound(a, b, nu),
        "harmonic_refined": refined_harmonic_bound(a, b, nu),
    }


def chain_gaps(a, b, nu, tol=DEFAULT_TOL):
    """Vectorised form of :func:`evaluate_scalar_chain`.

    Returns ``{label: (gap, holds)}`` with array-valued gaps and flags.
    """
    vals = scalar_bounds(a, b, nu)
    out = {}
    for _, label, lk, rk in CHAIN_LINKS:
        lhs, rhs = vals[lk], vals[rk]
        gap = lhs - rhs
        out[label] = (gap, _holds(gap, lhs, rhs, tol))
    return out


def evaluate_scalar_chain(pair: WeightedPair, tol: float = DEFAULT_TOL) -> list[BoundComparison]:
    """Check the full scalar chain at one point.

    The first six comparisons run from the arithmetic mean down to the
    harmonic mean through both refinements; the seventh is the reverse
    Young bound above the arithmetic mean.  A negative ``tol`` demands a
    strictly positive margin.
    """
    if not np.isfinite(tol):
        raise InputError(f"tol must be finite, got {tol!r}")
    vals = scalar_bounds(pair.a, pair.b, pair.nu)
    return [BoundComparison.of(kind, label, vals[lk], vals[rk], tol) for kind, label, lk, rk in CHAIN_LINKS]


def weighted_jensen_gap(a, p):
    """Both sides of the n-term additive refinement of weighted AM-GM.

    ``lhs_gap = sum(p*a) - prod(a**p)`` and
    ``rhs_gap = n * min(p) * (mean(a) - geomean(a))``; the contract is
    ``lhs_gap >= rhs_gap >= 0``.  The last axis indexes the n terms, so a
    2-D input evaluates a batch of rows.
    """
    a = np.asarray(a, dtype=float)
    p = np.asarray(p, dtype=float)
    if a.shape != p.shape or a.ndim == 0 or a.shape[-1] < 2:
        raise InputError("a and p must have the same shape with at least 2 terms")
    if not np.all(np.abs(p.sum(axis=-1) - 1.0) <= 1e-12):
        raise InputError("weights must sum to 1 within 1e-12")
    if np.any(p <= 0.0):
        raise DomainError("weights must be positive")
    if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
        raise DomainError("entries must be positive and finite")
    n = a.shape[-1]
    log_a = np.log(a)
    lhs = np.sum(p * a, axis=-1) - np.exp(np.sum(p * log_a, axis=-1))
    rhs = n * p.min(axis=-1) * (a.mean(axis=-1) - np.exp(log_a.mean(axis=-1)))
    if lhs.ndim == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


class LemmaId(enum.Enum):
    LOG_BOUNDS = "LogBounds"
    THREE_MEANS = "ThreeMeans"
    EXP_T_LEMMA = "ExpTLemma"


@dataclass(frozen=True)
class LemmaScanReport:
    lemma_id: LemmaId
    domain_lo: float
    domain_hi: float
    grid_points: int
    min_margin: float
    argmin: float
    # second coordinate of the minimiser for the 2-D three-means scan
    argmin_y: float | None = None
    # smallest margin divided by its tolerance scale 1 + |lhs| + |rhs|
    min_scaled_margin: float = 0.0

    def passed(self, tol: float = 1e-12) -> bool:
        return self.min_scaled_margin >= -tol


def _grid(lo, hi, n, log_spaced, removable=None):
    if lo == 0.0:
        # open left end: drop the zero node
        g = np.linspace(lo, hi, n + 1)[1:]
    elif log_spaced:
        g = np.geomspace(lo, hi, n)
        g[0], g[-1] = lo, hi
    else:
        g = np.linspace(lo, hi, n)
    if removable is not None and lo <= removable <= hi and not np.any(g == removable):
        g = np.sort(np.append(g, removable))
    return g


def _log_bounds_margins(x):
    # lower: log x - 2(x-1)/(x+1); upper: (x-1)/sqrt(x) - log x
    u = x - 1.0
    log_x = np.log1p(u)
    lo_side = 2.0 * u / (x + 1.0)
    hi_side = u / np.sqrt(x)
    m1 = log_x - lo_side
    m2 = hi_side - log_x
    s1 = 1.0 + np.abs(log_x) + np.abs(lo_side)
    s2 = 1.0 + np.abs(hi_side) + np.abs(log_x)
    at_one = x == 1.0
    m1 = np.where(at_one, 0.0, m1)
    m2 = np.where(at_one, 0.0, m2)
    return (m1, s1), (m2, s2)


def _exp_t_margin(t):
    # e (t^2 + 1) - (t + 1) t^(t/(t-1)); the power tends to e at t = 1
    u = t - 1.0
    at_one = t == 1.0
    safe_u = np.where(at_one, 1.0, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        expo = t * np.log1p(safe_u) / safe_u
    power = np.where(at_one, math.e, np.exp(expo))
    lhs = math.e * (t * t + 1.0)
    rhs = (t + 1.0) * power
    margin = np.where(at_one, 0.0, lhs - rhs)
    return margin, 1.0 + np.abs(lhs) + np.abs(rhs)


def _three_means_margins(x, y):
    # logarithmic mean via log1p of the relative difference from the smaller
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    u = (hi - lo) / lo
    log_mean = (hi - lo) / np.log1p(u)
    geo = np.sqrt(x * y)
    ari = 0.5 * (x + y)
    return (log_mean - geo, 1.0 + geo + log_mean), (ari - log_mean, 1.0 + ari + log_mean)


def scan_lemma(lemma_id, domain_lo: float, domain_hi: float, grid_points: int) -> LemmaScanReport:
    """Grid-check one of the supporting scalar lemmas.

    * ``LogBounds``: ``2(x-1)/(x+1) <= log x <= (x-1)/sqrt(x)`` for ``x >= 1``.
    * ``ThreeMeans``: geometric < logarithmic < arithmetic mean of ``x != y``,
      scanned on a square 2-D grid with about ``grid_points`` nodes.
    * ``ExpTLemma``: ``e(t^2+1) >= (t+1) t^(t/(t-1))`` for ``t > 0``.

    Removable points (``x = 1``, ``t = 1``) are always on the grid and get
    their limit margin 0 rather than a 0/0 evaluation.  A zero lower end is
    treated as open.
    """
    lemma_id = LemmaId(lemma_id)
    lo, hi, n = float(domain_lo), float(domain_hi), int(grid_points)
    if n < 2:
        raise InputError("grid_points must be at least 2")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InputError(f"empty or invalid domain [{lo}, {hi}]")

    if lemma_id is LemmaId.LOG_BOUNDS:
        if lo < 1.0:
            raise InputError("LogBounds needs domain_lo >= 1")
        x = _grid(lo, hi, n, log_spaced=hi / lo > 10.0, removable=1.0)
        (m1, s1), (m2, s2) = _log_bounds_margins(x)
        margins = np.minimum(m1, m2)
        scaled = np.minimum(m1 / s1, m2 / s2)
        i = int(np.argmin(margins))
        return LemmaScanReport(lemma_id, lo, hi, x.size, float(margins[i]), float(x[i]),
                               min_scaled_margin=float(scaled.min()))

    if lemma_id is LemmaId.EXP_T_LEMMA:
        if lo < 0.0:
            raise InputError("ExpTLemma needs t > 0")
        t = _grid(lo, hi, n, log_spaced=False, removable=1.0)
        margin, scale = _exp_t_margin(t)
        i = int(np.argmin(margin))
        return LemmaScanReport(lemma_id, lo, hi, t.size, float(margin[i]), float(t[i]),
                               min_scaled_margin=float((margin / scale).min()))

    if lo <= 0.0:
        raise InputError("ThreeMeans needs a positive domain")
    k = max(2, math.isqrt(n - 1) + 1)
    axis = np.linspace(lo, hi, k)
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    off = xx != yy
    x, y = xx[off], yy[off]
    (m1, s1), (m2, s2) = _three_means_margins(x, y)
    margins = np.minimum(m1, m2)
    scaled = np.minimum(m1 / s1, m2 / s2)
    i = int(np.argmin(margins))
    return LemmaScanReport(lemma_id, lo, hi, k * k, float(margins[i]), float(x[i]),
                           argmin_y=float(y[i]), min_scaled_margin=float(scaled.min()))
