"""Entropy-rate upper bounds in nats.

Three single-letter bounds for discrete-valued stationary processes, all
driven by second-order statistics:

* :func:`gaussian_psd_bound` - 1/2 log(2*pi*e) + (1/4pi) Int log(Phi + 1/12),
  needing the full spectral density;
* :func:`tdist_bound_k` - a minimization over a banded t-reference family,
  needing only the first k autocovariances;
* :func:`tdist_bound_1` - the closed-form order-1 special case.

Plus the exact Gaussian (Kolmogorov) differential entropy rate and the
one-dimensional maximum-entropy bound they all degenerate to.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .numerics import (
    TWO_PI,
    ConvergenceError,
    DomainError,
    QuadratureSpec,
    integrate_periodic_full,
)
from .spectrum import CovarianceSequence, SpectralDensity

LOG_2PI_E = math.log(2.0 * math.pi * math.e)

# The feasible region sum|beta_m| < 1 is open; the optimizer works on the
# shrunken closed region sum|beta_m| <= 1 - L1_SHRINK.
L1_SHRINK = 1e-6

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class BoundResult:
    """A bound value plus optimizer/quadrature diagnostics."""

    value: float
    argmin: list | None = None
    quadrature_error_estimate: float = 0.0
    optimizer_iterations: int = 0


@dataclass(frozen=True)
class BetaVector:
    """Reference-family coefficients [beta_1, ..., beta_k], sum|beta_m| < 1."""

    components: tuple

    def __post_init__(self):
        comps = tuple(float(b) for b in self.components)
        object.__setattr__(self, "components", comps)
        if sum(abs(b) for b in comps) >= 1.0:
            raise DomainError("beta must satisfy sum of |beta_m| < 1")


def univariate_me_bound(variance: float) -> float:
    """1/2 log(2*pi*e*(variance + 1/12)), the single-sample bound."""
    if not variance >= 0:
        raise DomainError(f"variance must be non-negative, got {variance!r}")
    return 0.5 * math.log(2.0 * math.pi * math.e * (variance + 1.0 / 12.0))


class _PsdZero(Exception):
    pass


def gaussian_entropy_rate(
    psd: SpectralDensity, quad: QuadratureSpec | None = None
) -> float:
    """Exact differential entropy rate of the Gaussian process with this PSD.

    1/2 log(2*pi*e) + (1/4pi) Int_0^{2pi} log Phi(lambda) d lambda.  Returns
    -inf when the quadrature meets a nonpositive PSD value (a PSD touching
    zero makes the log integrand singular there).
    """

    def integrand(lam):
        vals = np.asarray(psd(lam), dtype=float)
        if np.any(vals <= 0.0) or not np.all(np.isfinite(vals)):
            raise _PsdZero
        return np.log(vals)

    try:
        q = integrate_periodic_full(integrand, quad)
    except _PsdZero:
        return -math.inf
    return 0.5 * LOG_2PI_E + q.value / (2.0 * TWO_PI)


def gaussian_psd_bound(
    psd: SpectralDensity, quad: QuadratureSpec | None = None
) -> BoundResult:
    """Entropy-rate bound from the spectral density.

    1/2 log(2*pi*e) + (1/4pi) Int log(Phi(lambda) + 1/12); always finite
    because the shifted integrand is bounded below by log(1/12).
    """

    def integrand(lam):
        return np.log(np.asarray(psd(lam), dtype=float) + 1.0 / 12.0)

    q = integrate_periodic_full(integrand, quad)
    return BoundResult(
        value=0.5 * LOG_2PI_E + q.value / (2.0 * TWO_PI),
        argmin=None,
        quadrature_error_estimate=q.error_estimate / (2.0 * TWO_PI),
        optimizer_iterations=0,
    )


def _golden_section(f, lo: float, hi: float, xtol: float = 1e-12):
    """Golden-section minimization on [lo, hi]; returns (x*, f(x*), iterations)."""
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    iterations = 0
    while hi - lo > xtol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
        iterations += 1
    x = 0.5 * (lo + hi)
    return x, f(x), iterations


def tdist_bound_1(r0: float, r1: float) -> BoundResult:
    """Order-1 closed-form bound from R(0) and R(1).

    inf over s in (-1, 1) of
    1/2 log(4*pi*e * ((R(0) + 1/12) + s*R(1)) / (1 + sqrt(1 - s^2))),
    located by a 1001-point pre-scan followed by golden-section refinement.
    """
    if not r0 > 0:
        raise DomainError(f"R(0) must be positive, got {r0!r}")
    if abs(r1) > r0 * (1.0 + 1e-12):
        raise DomainError(f"|R(1)| = {abs(r1)} exceeds R(0) = {r0}")
    sig = r0 + 1.0 / 12.0
    log_4pi_e = math.log(4.0 * math.pi * math.e)

    def objective(s):
        return 0.5 * (
            log_4pi_e + math.log(sig + s * r1) - math.log1p(math.sqrt(1.0 - s * s))
        )

    lo, hi = -1.0 + 1e-9, 1.0 - 1e-9
    grid = np.linspace(lo, hi, 1001)
    vals = np.fromiter((objective(s) for s in grid), dtype=float, count=len(grid))
    i = int(np.argmin(vals))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    s_star, f_star, iterations = _golden_section(objective, a, b)
    return BoundResult(
        value=f_star,
        argmin=[s_star],
        quadrature_error_estimate=0.0,
        optimizer_iterations=iterations + len(grid),
    )


class _LogPsiIntegral:
    """Adaptive mean of log Psi(beta, .) with cached cosine tables.

    Psi(beta, lambda) = 1 + sum_m beta_m cos(m*lambda).  The same uniform
    node sets recur across optimizer steps, so cos(m*lambda) is cached per
    node count.
    """

    def __init__(self, k: int, quad: QuadratureSpec):
        self.k = k
        self.quad = quad
        self._tables: dict[int, np.ndarray] = {}
        self.last_error = 0.0

    def _table(self, n: int) -> np.ndarray:
        tab = self._tables.get(n)
        if tab is None:
            lam = TWO_PI * np.arange(n) / n
            orders = np.arange(1, self.k + 1)
            tab = np.cos(np.multiply.outer(orders, lam))
            self._tables[n] = tab
        return tab

    def fixed(self, betas: np.ndarray, n: int) -> np.ndarray:
        """Mean of log Psi on an n-node grid for a batch of beta rows."""
        psi = 1.0 + betas @ self._table(n)
        np.clip(psi, 1e-300, None, out=psi)
        return np.log(psi).mean(axis=-1)

    def adaptive(self, beta: np.ndarray) -> float:
        n = 256
        est = float(self.fixed(beta, n))
        prev = math.inf
        # tolerance on the mean; enters the bound with weight 1/2
        tol = self.quad.abs_tol
        while n <= self.quad.max_points:
            if abs(est - prev) < tol:
                self.last_error = abs(est - prev)
                return est
            n *= 2
            prev = est
            est = float(self.fixed(beta, n))
        raise ConvergenceError(
            f"log-Psi quadrature did not converge within {self.quad.max_points} nodes",
            estimates=(prev, est),
        )


def _feasible_grid(k: int, limit: float, points_per_axis: int) -> np.ndarray:
    axis = np.linspace(-limit, limit, points_per_axis)
    if k <= 4:
        grid = np.array(list(itertools.product(axis, repeat=k)))
        grid = grid[np.abs(grid).sum(axis=1) <= limit]
    else:
        # product grids explode beyond k = 4; fall back to axis-aligned rays
        grid = [np.zeros(k)]
        for m in range(k):
            for v in axis:
                b = np.zeros(k)
                b[m] = v
                grid.append(b)
        grid = np.array(grid)
    zero = np.zeros((1, k))
    return np.vstack([zero, grid])


def tdist_bound_k(
    cov: CovarianceSequence,
    quad: QuadratureSpec | None = None,
    grid_points_per_axis: int = 11,
    fatol: float = 1e-8,
) -> BoundResult:
    """Order-k bound from the covariances [R(0), ..., R(k)].

    Minimizes 1/2 log(2*pi*e*Sigma(beta)) - (1/4pi) Int log Psi(beta, lambda)
    over the shrunken region sum|beta_m| <= 1 - 1e-6, where
    Sigma(beta) = (R(0) + 1/12) + sum_m beta_m R(m) and
    Psi(beta, lambda) = 1 + sum_m beta_m cos(m*lambda).

    A coarse product grid seeds a Nelder-Mead refinement with an l1-violation
    penalty.  The objective is smooth inside the region but not known to be
    convex; for k >= 4 the reported argmin may be a local minimum.
    """
    quad = quad or QuadratureSpec()
    k = cov.k
    r = np.asarray(cov.values, dtype=float)
    if k == 0:
        return BoundResult(value=univariate_me_bound(r[0]), argmin=[])
    sig1 = r[0] + 1.0 / 12.0
    limit = 1.0 - L1_SHRINK
    integral = _LogPsiIntegral(k, quad)

    def sigma_of(beta: np.ndarray) -> float:
        return sig1 + float(beta @ r[1:])

    def objective(beta: np.ndarray) -> float:
        l1 = float(np.abs(beta).sum())
        penalty = 0.0
        if l1 > limit:
            beta = beta * (limit / l1)
            penalty = 100.0 * (l1 - limit)
        sig = sigma_of(beta)
        if sig <= 0.0:
            return math.inf
        return (
            0.5 * (LOG_2PI_E + math.log(sig))
            - 0.5 * integral.adaptive(beta)
            + penalty
        )

    # coarse grid scan on a fixed 1024-node quadrature, evaluated in blocks
    candidates = _feasible_grid(k, limit, grid_points_per_axis)
    best_beta = np.zeros(k)
    best_val = math.inf
    for start in range(0, len(candidates), 512):
        block = candidates[start : start + 512]
        sig = sig1 + block @ r[1:]
        ok = sig > 0.0
        vals = np.full(len(block), math.inf)
        if np.any(ok):
            vals[ok] = 0.5 * (LOG_2PI_E + np.log(sig[ok])) - 0.5 * integral.fixed(
                block[ok], 1024
            )
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_beta = block[i].copy()

    step = limit / max(grid_points_per_axis - 1, 1)
    simplex = np.vstack([best_beta] + [best_beta + step * e for e in np.eye(k)])
    res = optimize.minimize(
        objective,
        best_beta,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "fatol": fatol,
            "xatol": 1e-9,
            "maxiter": 4000 * k,
            "maxfev": 4000 * k,
        },
    )
    if not res.success and "maximum" in (res.message or "").lower():
        raise ConvergenceError(
            f"order-k optimizer did not converge: {res.message}",
            estimates=(best_val, float(res.fun)),
        )
    beta_star = np.asarray(res.x, dtype=float)
    l1 = float(np.abs(beta_star).sum())
    if l1 > limit:
        beta_star = beta_star * (limit / l1)
    value = (
        0.5 * (LOG_2PI_E + math.log(sigma_of(beta_star)))
        - 0.5 * integral.adaptive(beta_star)
    )
    return BoundResult(
        value=float(value),
        argmin=[float(b) for b in beta_star],
        quadrature_error_estimate=0.5 * integral.last_error,
        optimizer_iterations=int(res.nit),
    )
