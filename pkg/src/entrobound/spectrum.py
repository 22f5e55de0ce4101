"""Covariance sequences, spectral densities, and Toeplitz utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import linalg

from .numerics import TWO_PI, DomainError, QuadratureSpec

_VALIDATION_GRID = 4096
_NEGATIVITY_SLACK = 1e-9


class PsdValidationError(DomainError):
    """A candidate spectral density is negative on the validation grid."""


@dataclass(frozen=True)
class CovarianceSequence:
    """Autocovariances [R(0), R(1), ..., R(k)] of a stationary process."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) == 0:
            raise DomainError("covariance sequence needs at least R(0)")
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("covariances must be finite")
        r0 = vals[0]
        if not r0 > 0:
            raise DomainError(f"R(0) must be positive, got {r0!r}")
        for m, v in enumerate(vals[1:], start=1):
            if abs(v) > r0 * (1.0 + 1e-12):
                raise DomainError(
                    f"|R({m})| = {abs(v)} exceeds R(0) = {r0} (Cauchy-Schwarz)"
                )

    @property
    def k(self) -> int:
        """Number of positive lags carried."""
        return len(self.values) - 1

    def lag(self, m: int) -> float:
        """R(|m|), zero beyond the stored lags."""
        m = abs(int(m))
        return self.values[m] if m < len(self.values) else 0.0


class SpectralDensity:
    """A power spectral density on [0, 2*pi].

    Construct through :meth:`cosine_series`, :meth:`markov_mixture` or
    :meth:`from_callable`.  Non-negativity is checked on a 4096-point grid
    at construction; instances are immutable and shareable across threads.
    """

    def __init__(self, evaluate: Callable, kind: str, truncated: bool = False):
        self._evaluate = evaluate
        self.kind = kind
        self.truncated = truncated
        self._validate()

    @classmethod
    def cosine_series(
        cls, coefficients: Sequence[float], truncated: bool = False
    ) -> "SpectralDensity":
        """c_0 + 2 * sum_m c_m cos(m*lambda) from coefficients [c_0, ..., c_L]."""
        c = np.asarray(coefficients, dtype=float)
        if c.ndim != 1 or len(c) == 0 or not np.all(np.isfinite(c)):
            raise DomainError("cosine series needs a finite 1-D coefficient list")
        orders = np.arange(1, len(c))

        def evaluate(lam):
            lam = np.asarray(lam, dtype=float)
            if len(c) == 1:
                return np.full(lam.shape, c[0])
            return c[0] + 2.0 * np.cos(np.multiply.outer(lam, orders)) @ c[1:]

        psd = cls(evaluate, kind="cosine_series", truncated=truncated)
        psd.coefficients = tuple(c)
        return psd

    @classmethod
    def markov_mixture(cls, a: float, b: float, omega: float) -> "SpectralDensity":
        """a * (1 - omega^2) / (1 + omega^2 - 2*omega*cos(lambda)) + b."""
        if not abs(omega) < 1:
            raise DomainError(f"markov mixture requires |omega| < 1, got {omega!r}")

        def evaluate(lam):
            lam = np.asarray(lam, dtype=float)
            denom = 1.0 + omega**2 - 2.0 * omega * np.cos(lam)
            return a * (1.0 - omega**2) / denom + b

        psd = cls(evaluate, kind="markov_mixture")
        psd.mixture = (float(a), float(b), float(omega))
        return psd

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray]) -> "SpectralDensity":
        def evaluate(lam):
            lam = np.asarray(lam, dtype=float)
            if lam.size > 1:
                try:
                    out = np.asarray(fn(lam), dtype=float)
                    if out.shape == lam.shape:
                        return out
                except (TypeError, ValueError):
                    pass
            return np.fromiter(
                (float(fn(x)) for x in lam), dtype=float, count=lam.size
            ).reshape(lam.shape)

        return cls(evaluate, kind="callable")

    def _validate(self):
        grid = TWO_PI * np.arange(_VALIDATION_GRID) / _VALIDATION_GRID
        vals = self._evaluate(grid)
        if not np.all(np.isfinite(vals)):
            bad = grid[~np.isfinite(vals)][0]
            raise PsdValidationError(f"PSD is non-finite at lambda = {bad:.6f}")
        floor = -_NEGATIVITY_SLACK * max(1.0, float(np.max(np.abs(vals))))
        if np.min(vals) < floor:
            bad = grid[int(np.argmin(vals))]
            raise PsdValidationError(
                f"PSD is negative at lambda = {bad:.6f} (value {np.min(vals):.3e})"
            )

    def __call__(self, lam):
        scalar = np.isscalar(lam)
        out = self._evaluate(np.atleast_1d(np.asarray(lam, dtype=float)))
        return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ToeplitzSpec:
    """Symmetric banded Toeplitz matrix given by its symbol coefficients.

    Entry (i, j) equals ``diagonal`` when i = j and ``off_diagonals[|i-j|-1]``
    for 1 <= |i-j| <= bandwidth, zero beyond.  The strict diagonal-dominance
    flag implements the sufficient positive-definiteness criterion
    sum_{j != 0} |h(j)| < h(0).
    """

    diagonal: float
    off_diagonals: tuple
    n: int
    strictly_diagonally_dominant: bool = field(init=False)

    def __post_init__(self):
        offs = tuple(float(v) for v in self.off_diagonals)
        object.__setattr__(self, "off_diagonals", offs)
        if self.n < 1:
            raise DomainError("matrix dimension must be positive")
        dominant = 2.0 * sum(abs(v) for v in offs) < self.diagonal
        object.__setattr__(self, "strictly_diagonally_dominant", bool(dominant))

    def matrix(self) -> np.ndarray:
        """Dense realization (for small n / testing)."""
        m = np.zeros((self.n, self.n))
        np.fill_diagonal(m, self.diagonal)
        for d, v in enumerate(self.off_diagonals, start=1):
            if d >= self.n:
                break
            idx = np.arange(self.n - d)
            m[idx, idx + d] = v
            m[idx + d, idx] = v
        return m


def psd_from_finite_covariance(
    cov: CovarianceSequence, complete: bool = True
) -> SpectralDensity:
    """Cosine-series PSD with c_m = R(m).

    Exact when the underlying covariance really vanishes beyond the stored
    lags (MA-type processes).  Pass ``complete=False`` when the sequence is
    a truncation of a longer covariance; the result then carries
    ``truncated=True`` so downstream users see the caveat.
    """
    return SpectralDensity.cosine_series(cov.values, truncated=not complete)


def closed_form_log_cos_integral(s: float) -> float:
    """(1/2pi) * integral of log(1 + s*cos(lambda)) over [0, 2*pi], |s| <= 1.

    Evaluated as log((1 + sqrt(1 - s^2)) / 2), which is algebraically equal
    to -log((2 - 2*sqrt(1 - s^2)) / s^2) for s != 0 and is exact (0) at s = 0.
    """
    if not abs(s) <= 1.0:
        raise DomainError(f"closed form requires |s| <= 1, got {s!r}")
    return math.log(0.5 * (1.0 + math.sqrt(1.0 - s * s)))


def toeplitz_gaussian_bound_finite(cov: CovarianceSequence, n: int) -> float:
    """Finite-n Gaussian bound (1/n)[(n/2) log(2*pi*e) + (1/2) log det(K + I/12)].

    K is the n x n Toeplitz matrix with entries R(|i-j|) (zero beyond the
    stored lags).  The log-determinant is computed through a banded
    Cholesky factorization, O(n * k^2) for bandwidth k.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    k = min(cov.k, n - 1)
    ab = np.zeros((k + 1, n))
    ab[0, :] = cov.values[0] + 1.0 / 12.0
    for i in range(1, k + 1):
        ab[i, : n - i] = cov.values[i]
    try:
        factor = linalg.cholesky_banded(ab, lower=True)
    except linalg.LinAlgError as exc:
        raise DomainError(
            "Toeplitz matrix K + I/12 is not positive definite; "
            "the covariance sequence is invalid"
        ) from exc
    logdet = 2.0 * float(np.sum(np.log(factor[0, :])))
    return 0.5 * math.log(TWO_PI * math.e) + logdet / (2.0 * n)


def fiedler_determinant_check(
    eigs_a: Sequence[float], eigs_b: Sequence[float], det_sum: float
) -> bool:
    """Check prod(a_i + b_i) <= det_sum <= prod(a_i + b_{n+1-i}).

    Eigenvalue lists are sorted internally; both must be positive and of
    equal length n <= 16.  A relative slack of 1e-9 absorbs rounding in
    the supplied determinant.
    """
    a = np.sort(np.asarray(eigs_a, dtype=float))[::-1]
    b = np.sort(np.asarray(eigs_b, dtype=float))[::-1]
    if a.shape != b.shape:
        raise DomainError("eigenvalue lists must have equal length")
    if len(a) > 16:
        raise DomainError("check is restricted to n <= 16")
    if not (np.all(a > 0) and np.all(b > 0)):
        raise DomainError("eigenvalues must be positive")
    lower = float(np.prod(a + b))
    upper = float(np.prod(a + b[::-1]))
    slack = 1e-9
    return lower * (1.0 - slack) <= det_sum <= upper * (1.0 + slack)


def tridiagonal_determinant(alpha: float, beta: float, n: int) -> float:
    """Determinant of the n x n tridiagonal Toeplitz matrix tri(beta, alpha, beta).

    Uses the recursion phi_{m+2} = alpha*phi_{m+1} - beta^2*phi_m with
    phi_0 = 1, phi_1 = alpha; valid (positive definite) for |beta| < alpha/2.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if not abs(beta) < alpha / 2.0:
        raise DomainError(
            f"positive definiteness requires |beta| < alpha/2, got beta={beta!r}"
        )
    if n < 1:
        raise DomainError("n must be >= 1")
    prev, cur = 1.0, alpha
    for _ in range(n - 1):
        prev, cur = cur, alpha * cur - beta * beta * prev
    return cur
