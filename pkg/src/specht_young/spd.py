"""Small dense symmetric linear algebra: Jacobi eigensolver and SPD matrix means.

Matrices are plain ``numpy`` arrays; :class:`SpdMatrix` wraps one that has
been checked positive definite and caches its eigendecomposition, which
every fractional power reuses.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditionError, DomainError, InputError, NumericError

__all__ = [
    "MAX_DIM",
    "SpectralBounds",
    "SpectralDecomposition",
    "SpdMatrix",
    "as_symmetric",
    "loewner_geq",
    "matrix_power",
    "power_mean",
    "random_spd_with_spectrum",
    "spectral_bounds_from",
    "sym_eigen",
    "weighted_arith",
    "weighted_harm",
]

MAX_DIM = 64
SYM_TOL = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100
DEFAULT_LOEWNER_TOL = 1e-9


def as_symmetric(x, tol: float = SYM_TOL) -> np.ndarray:
    """Validate ``x`` as a finite square symmetric matrix and return ``(x + x.T) / 2``."""
    x = np.array(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] == 0:
        raise InputError(f"expected a non-empty square matrix, got shape {x.shape}")
    if x.shape[0] > MAX_DIM:
        raise InputError(f"dimension {x.shape[0]} exceeds cap {MAX_DIM}")
    if not np.all(np.isfinite(x)):
        raise DomainError("matrix has non-finite entries")
    scale = 1.0 + np.abs(x).max()
    if np.abs(x - x.T).max() > tol * scale:
        raise DomainError("matrix is not symmetric")
    return 0.5 * (x + x.T)


@dataclass(frozen=True)
class SpectralDecomposition:
    """``a = q @ diag(lam) @ q.T`` with ``lam`` ascending."""

    q: np.ndarray
    lam: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.q * self.lam) @ self.q.T

    def apply(self, fn) -> np.ndarray:
        """``q @ diag(fn(lam)) @ q.T``, symmetrised."""
        m = (self.q * fn(self.lam)) @ self.q.T
        return 0.5 * (m + m.T)


def _off_norm(a, iu) -> float:
    return math.sqrt(2.0 * float(np.sum(a[iu] ** 2)))


@functools.lru_cache(maxsize=None)
def _round_robin(n: int):
    """Pair schedule covering every (p, r), p < r, once per sweep in n-1 (or n) rounds.

    Pairs within a round are disjoint, so their rotations commute and can be
    applied together.
    """
    m = n + n % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = sorted((min(x), max(x)) for x in pairs if max(x) < n)
        rounds.append((np.array([x[0] for x in pairs]), np.array([x[1] for x in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def sym_eigen(a) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the disjoint rotations of one round are applied as a single
    orthogonal similarity.  Iteration stops when the off-diagonal Frobenius
    norm drops below ``1e-14 * ||a||_F``.

    Raises
    ------
    NumericError
        If 100 sweeps are not enough.
    """
    a = as_symmetric(a)
    n = a.shape[0]
    q = np.eye(n)
    target = JACOBI_TOL * math.sqrt(float(np.sum(a * a)))
    iu = np.triu_indices(n, 1)
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        off = _off_norm(a, iu)
        if off <= target:
            break
        for p, r in rounds:
            apr = a[p, r]
            if not apr.any():
                continue
            app, arr = a[p, p], a[r, r]
            # tan of the rotation angle, overflow-free form of Golub & Van Loan sym.schur2
            half = 0.5 * (arr - app)
            den = np.abs(half) + np.hypot(half, apr)
            t = np.divide(apr * np.copysign(1.0, half), den,
                          out=np.zeros_like(den), where=den > 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            j = np.eye(n)
            j[p, p] = c
            j[r, r] = c
            j[p, r] = s
            j[r, p] = -s
            a = j.T @ a @ j
            a = 0.5 * (a + a.T)
            a[p, p] = app - t * apr
            a[r, r] = arr + t * apr
            a[p, r] = 0.0
            a[r, p] = 0.0
            q = q @ j
    else:
        off = _off_norm(a, iu)
        if off > target:
            raise NumericError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-norm {off:.3e})")
    lam = np.diag(a).copy()
    order = np.argsort(lam, kind="stable")
    return SpectralDecomposition(q[:, order], lam[order])


class SpdMatrix:
    """A symmetric positive-definite matrix with its cached eigensystem.

    Construction symmetrises the input and rejects it unless the smallest
    eigenvalue exceeds ``1e-13`` times the largest.  Instances are treated
    as immutable; the underlying array is read-only.
    """

    __slots__ = ("array", "_eig")

    def __init__(self, x, *, sym_tol: float = SYM_TOL):
        if isinstance(x, SpdMatrix):
            self.array, self._eig = x.array, x._eig
            return
        self.array = as_symmetric(x, sym_tol)
        self.array.setflags(write=False)
        self._eig = None
        lam = self.eig.lam
        if not (lam[-1] > 0.0 and lam[0] > 1e-13 * lam[-1]):
            raise DomainError(f"matrix is not positive definite (eigenvalues {lam[0]:.3e} .. {lam[-1]:.3e})")

    @classmethod
    def _trusted(cls, x) -> SpdMatrix:
        # internal results known to be SPD: symmetrise roundoff, defer the eigensystem
        x = np.asarray(x, dtype=float)
        obj = cls.__new__(cls)
        obj.array = 0.5 * (x + x.T)
        obj.array.setflags(write=False)
        obj._eig = None
        return obj

    @property
    def eig(self) -> SpectralDecomposition:
        if self._eig is None:
            self._eig = sym_eigen(self.array)
        return self._eig

    def __repr__(self):
        return f"SpdMatrix({self.array.tolist()!r})"

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @property
    def lambda_min(self) -> float:
        return float(self.eig.lam[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eig.lam[-1])

    def power(self, p: float) -> np.ndarray:
        if p == 1:
            return self.array.copy()
        return self.eig.apply(lambda lam: lam**p)

    def inverse(self) -> SpdMatrix:
        return SpdMatrix._trusted(self.power(-1.0))

    def __array__(self, dtype=None, copy=None):
        return self.array if dtype is None else self.array.astype(dtype)


def _spd(x) -> SpdMatrix:
    return x if isinstance(x, SpdMatrix) else SpdMatrix(x)


def _same_dim(a: SpdMatrix, b: SpdMatrix):
    if a.dim != b.dim:
        raise InputError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _check_nu(nu):
    if not (0.0 <= nu <= 1.0):
        raise DomainError(f"nu must lie in [0, 1], got {nu!r}")


def matrix_power(a, p: float) -> SpdMatrix:
    """``Q diag(lam**p) Q.T`` for an SPD matrix."""
    if not math.isfinite(p):
        raise DomainError("power must be finite")
    a = _spd(a)
    if p == 0:
        return SpdMatrix._trusted(np.eye(a.dim))
    return SpdMatrix._trusted(a.power(p))


def power_mean(a, b, nu: float) -> SpdMatrix:
    """Weighted geometric mean ``A #_nu B = A^1/2 (A^-1/2 B A^-1/2)^nu A^1/2``."""
    a, b = _spd(a), _spd(b)
    _same_dim(a, b)
    _check_nu(nu)
    if nu == 0:
        return a
    if nu == 1:
        return b
    half = a.power(0.5)
    ihalf = a.power(-0.5)
    x = SpdMatrix._trusted(ihalf @ b.array @ ihalf)
    return SpdMatrix._trusted(half @ x.power(nu) @ half)


def weighted_arith(a, b, nu: float) -> SpdMatrix:
    """``(1 - nu) A + nu B``."""
    a, b = _spd(a), _spd(b)
    _same_dim(a, b)
    _check_nu(nu)
    if nu == 0:
        return a
    if nu == 1:
        return b
    return SpdMatrix._trusted((1.0 - nu) * a.array + nu * b.array)


def weighted_harm(a, b, nu: float) -> SpdMatrix:
    """``((1 - nu) A^-1 + nu B^-1)^-1``."""
    a, b = _spd(a), _spd(b)
    _same_dim(a, b)
    _check_nu(nu)
    if nu == 0:
        return a
    if nu == 1:
        return b
    return weighted_arith(a.inverse(), b.inverse(), nu).inverse()


def loewner_geq(x, y, tol: float = DEFAULT_LOEWNER_TOL) -> tuple[bool, float]:
    """Test ``x >= y`` in the Loewner order.

    Returns ``(holds, min_eig_gap)`` where ``min_eig_gap`` is the smallest
    eigenvalue of the symmetrised difference and ``holds`` allows a slack of
    ``tol * (1 + max|x| + max|y|)``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise InputError(f"dimension mismatch: {x.shape} vs {y.shape}")
    d = x - y
    gap = float(sym_eigen(0.5 * (d + d.T)).lam[0])
    scale = 1.0 + np.abs(x).max() + np.abs(y).max()
    return bool(gap >= -tol * scale), gap


@dataclass(frozen=True)
class SpectralBounds:
    """Constants ``m' <= m < M <= M'`` bracketing two separated spectra.

    ``h = M / m`` and ``h' = M' / m'``.  ``condition`` is 1 when the first
    matrix lies below the second and 2 when the roles are swapped.
    """

    m_prime: float
    m: float
    big_m: float
    big_m_prime: float
    condition: int = 1

    def __post_init__(self):
        if not (0.0 < self.m_prime <= self.m < self.big_m <= self.big_m_prime):
            raise ConditionError(
                "conditions not satisfied: need 0 < m' <= m < M <= M', got "
                f"{self.m_prime}, {self.m}, {self.big_m}, {self.big_m_prime}"
            )
        if self.condition not in (1, 2):
            raise InputError("condition must be 1 or 2")

    @property
    def h(self) -> float:
        return self.big_m / self.m

    @property
    def h_prime(self) -> float:
        return self.big_m_prime / self.m_prime

    def admits(self, a, b) -> bool:
        """Whether these constants bracket the spectra of ``a`` and ``b``."""
        a, b = _spd(a), _spd(b)
        lower, upper = (a, b) if self.condition == 1 else (b, a)
        return (
            self.m_prime <= lower.lambda_min
            and lower.lambda_max <= self.m
            and self.big_m <= upper.lambda_min
            and upper.lambda_max <= self.big_m_prime
        )


def spectral_bounds_from(a, b) -> SpectralBounds:
    """Tightest constants for which ``a`` and ``b`` satisfy a separation condition.

    Raises
    ------
    ConditionError
        If the spectra overlap or touch.
    """
    a, b = _spd(a), _spd(b)
    _same_dim(a, b)
    if a.lambda_max < b.lambda_min:
        return SpectralBounds(a.lambda_min, a.lambda_max, b.lambda_min, b.lambda_max, 1)
    if b.lambda_max < a.lambda_min:
        return SpectralBounds(b.lambda_min, b.lambda_max, a.lambda_min, a.lambda_max, 2)
    raise ConditionError(
        "conditions not satisfied: spectra overlap "
        f"(A in [{a.lambda_min:.6g}, {a.lambda_max:.6g}], B in [{b.lambda_min:.6g}, {b.lambda_max:.6g}])"
    )


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix from the QR factors of a Gaussian matrix."""
    z = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * np.sign(np.diag(r))


def random_spd_with_spectrum(dim: int, lo: float, hi: float, seed=None) -> SpdMatrix:
    """Random SPD matrix whose eigenvalues lie in ``[lo, hi]`` and include both ends.

    ``seed`` is an integer or a ``numpy.random.Generator``; the result is
    deterministic for a given integer seed.
    """
    if not (2 <= dim <= MAX_DIM):
        raise InputError(f"dim must lie in [2, {MAX_DIM}], got {dim}")
    if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo <= hi):
        raise InputError(f"need 0 < lo <= hi, got [{lo}, {hi}]")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if lo == hi:
        return SpdMatrix(lo * np.eye(dim))
    lam = rng.uniform(lo, hi, dim)
    lam[0], lam[1] = lo, hi
    q = random_orthogonal(dim, rng)
    return SpdMatrix._trusted((q * lam) @ q.T)
