"""Loewner-order verification of the Young-type operator inequality chains."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConditionError
from .scalar import specht_ratio
from .spd import (
    DEFAULT_LOEWNER_TOL,
    SpdMatrix,
    SpectralBounds,
    loewner_geq,
    power_mean,
    spectral_bounds_from,
    sym_eigen,
    weighted_arith,
    weighted_harm,
)

__all__ = [
    "ChainKind",
    "ChainLink",
    "ChainReport",
    "compare_refinements",
    "verify_add_chain",
    "verify_classic_chain",
    "verify_mult_chain",
]


class ChainKind(enum.Enum):
    MULT = "MultChain"
    ADD = "AddChain"
    CLASSIC = "ClassicChain"


@dataclass(frozen=True)
class ChainLink:
    name: str
    min_eig_gap: float
    holds: bool


@dataclass(frozen=True)
class ChainReport:
    """Links of one chain in top-to-bottom order."""

    chain_kind: ChainKind
    links: list[ChainLink]
    specht_factor: float = 1.0
    bounds: SpectralBounds | None = None
    nu: float = 0.0

    @property
    def passed(self) -> bool:
        return all(link.holds for link in self.links)


def _check(terms, tol):
    """Compare consecutive ``(name, matrix)`` terms of a descending chain."""
    links = []
    for (upper_name, upper), (lower_name, lower) in zip(terms, terms[1:]):
        holds, gap = loewner_geq(upper, lower, tol)
        links.append(ChainLink(f"{upper_name} >= {lower_name}", gap, holds))
    return links


def _prepare(a, b):
    a = a if isinstance(a, SpdMatrix) else SpdMatrix(a)
    b = b if isinstance(b, SpdMatrix) else SpdMatrix(b)
    return a, b


def _resolve_bounds(a, b, bounds):
    if bounds is None:
        return spectral_bounds_from(a, b)
    if not bounds.admits(a, b):
        raise ConditionError("conditions not satisfied: supplied bounds do not bracket the spectra")
    return bounds


def _specht_factor(bounds: SpectralBounds, nu: float) -> float:
    return specht_ratio(bounds.h ** min(nu, 1.0 - nu))


def verify_mult_chain(a, b, nu: float, tol: float = DEFAULT_LOEWNER_TOL,
                      bounds: SpectralBounds | None = None) -> ChainReport:
    """Check the Specht-refined operator chain for spectrally separated ``a`` and ``b``.

    ``(1-nu)A + nu B >= S A#B >= A#B >= S H >= H`` with ``S = S(h**r)``,
    ``H`` the weighted harmonic mean and ``h`` taken from ``bounds``, or from
    the tightest separation constants when ``bounds`` is omitted.  Supplied
    bounds must bracket the actual spectra.
    """
    a, b = _prepare(a, b)
    bounds = _resolve_bounds(a, b, bounds)
    s = _specht_factor(bounds, nu)
    arith = weighted_arith(a, b, nu).array
    geo = power_mean(a, b, nu).array
    harm = weighted_harm(a, b, nu).array
    terms = [
        ("arith", arith),
        ("S*geo", s * geo),
        ("geo", geo),
        ("S*harm", s * harm),
        ("harm", harm),
    ]
    return ChainReport(ChainKind.MULT, _check(terms, tol), s, bounds, nu)


def _add_refined(a: SpdMatrix, b: SpdMatrix, nu: float) -> np.ndarray:
    r = min(nu, 1.0 - nu)
    geo = power_mean(a, b, nu).array
    if r == 0.0:
        return geo
    mid = power_mean(a, b, 0.5).array
    return geo + 2.0 * r * (0.5 * (a.array + b.array) - mid)


def verify_add_chain(a, b, nu: float, tol: float = DEFAULT_LOEWNER_TOL) -> ChainReport:
    """Check the additively refined operator chain (no spectral hypothesis).

    ``(1-nu)A + nu B >= A#B + 2r((A+B)/2 - A#B_1/2) >= A#B >=
    {A^-1 #_nu B^-1 + 2r((A^-1+B^-1)/2 - A^-1 #_1/2 B^-1)}^-1 >= H``.
    """
    a, b = _prepare(a, b)
    arith = weighted_arith(a, b, nu).array
    geo = power_mean(a, b, nu).array
    refined_hi = _add_refined(a, b, nu)
    refined_lo = SpdMatrix._trusted(_add_refined(a.inverse(), b.inverse(), nu)).inverse().array
    harm = weighted_harm(a, b, nu).array
    terms = [
        ("arith", arith),
        ("geo+add", refined_hi),
        ("geo", geo),
        ("(inv-geo+add)^-1", refined_lo),
        ("harm", harm),
    ]
    return ChainReport(ChainKind.ADD, _check(terms, tol), 1.0, None, nu)


def verify_classic_chain(a, b, nu: float, tol: float = DEFAULT_LOEWNER_TOL) -> ChainReport:
    """Check ``(1-nu)A + nu B >= A #_nu B >= ((1-nu)A^-1 + nu B^-1)^-1``."""
    a, b = _prepare(a, b)
    terms = [
        ("arith", weighted_arith(a, b, nu).array),
        ("geo", power_mean(a, b, nu).array),
        ("harm", weighted_harm(a, b, nu).array),
    ]
    return ChainReport(ChainKind.CLASSIC, _check(terms, tol), 1.0, None, nu)


def compare_refinements(a, b, nu: float, bounds: SpectralBounds | None = None) -> tuple[float, float]:
    """Signed comparison of the multiplicative and additive lower refinements.

    With ``D = S(h**r) A#B - (A#B + 2r((A+B)/2 - A#B_1/2))`` returns
    ``(lambda_min(D), lambda_min(-D))``.  Both non-negative means the two
    bounds coincide; a negative first entry means the additive bound is
    larger in some direction.  No ordering is implied either way.
    """
    a, b = _prepare(a, b)
    bounds = _resolve_bounds(a, b, bounds)
    s = _specht_factor(bounds, nu)
    d = s * power_mean(a, b, nu).array - _add_refined(a, b, nu)
    lam = sym_eigen(0.5 * (d + d.T)).lam
    return float(lam[0]), float(-lam[-1])
