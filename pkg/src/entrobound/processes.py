"""Example process models with exact second-order statistics and entropies.

Models: i.i.d. Poisson, the discrete moving average DMA(L), two-state hidden
Markov chains with binomial or Poisson emissions, and the nearest-integer
quantizations of a Gaussian MA(1) and of a noisy AR(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import special

from .bounds import (
    BoundResult,
    gaussian_psd_bound,
    tdist_bound_1,
    tdist_bound_k,
    univariate_me_bound,
)
from .numerics import (
    SQRT2,
    ConvergenceError,
    DomainError,
    QuadratureSpec,
    SeriesSpec,
    bilateral_sum,
    integrate_gaussian_weighted,
)
from .spectrum import CovarianceSequence, SpectralDensity


class InvariantViolationError(RuntimeError):
    """A numerically-observed invariant failed outside its verified range."""


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoissonModel:
    """i.i.d. Poisson counts with rate > 0."""

    rate: float

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise DomainError(f"Poisson rate must be finite and positive: {self.rate!r}")


@dataclass(frozen=True)
class DmaModel:
    """Discrete moving average: S_n = Y_{n - Theta_n} with mixing weights delta."""

    mixture_weights: tuple
    innovation_variance: float

    def __post_init__(self):
        w = tuple(float(x) for x in self.mixture_weights)
        object.__setattr__(self, "mixture_weights", w)
        if len(w) == 0 or any(x < 0 for x in w):
            raise DomainError("mixture weights must be non-negative")
        if abs(sum(w) - 1.0) > 1e-12:
            raise DomainError(f"mixture weights must sum to 1, got {sum(w)!r}")
        if not self.innovation_variance > 0:
            raise DomainError("innovation variance must be positive")

    @property
    def order(self) -> int:
        return len(self.mixture_weights) - 1


@dataclass(frozen=True)
class BinomialEmission:
    trials: int
    p1: float
    p2: float

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError("trials must be a positive integer")
        object.__setattr__(self, "trials", int(self.trials))
        for p in (self.p1, self.p2):
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"emission probability out of [0,1]: {p!r}")


@dataclass(frozen=True)
class PoissonEmission:
    rate1: float
    rate2: float

    def __post_init__(self):
        for lam in (self.rate1, self.rate2):
            if not (math.isfinite(lam) and lam >= 0):
                raise DomainError(f"emission rate must be >= 0: {lam!r}")


@dataclass(frozen=True)
class TwoStateHmm:
    """Two-state stationary Markov chain with state-dependent count emissions."""

    gamma1: float
    gamma2: float
    emission: Union[BinomialEmission, PoissonEmission]

    def __post_init__(self):
        for g in (self.gamma1, self.gamma2):
            if not 0.0 < g < 1.0:
                raise DomainError(f"transition probability must lie in (0,1): {g!r}")

    @property
    def stationary(self) -> tuple:
        s = self.gamma1 + self.gamma2
        return (self.gamma2 / s, self.gamma1 / s)

    @property
    def omega(self) -> float:
        return 1.0 - self.gamma1 - self.gamma2


@dataclass(frozen=True)
class QuantizedMaModel:
    """Nearest-integer quantization of X_n = W_n + theta*W_{n-1}, W ~ N(0, sigma^2)."""

    sigma: float
    theta: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive: {self.sigma!r}")
        if not self.theta >= 0:
            raise DomainError(f"theta must be non-negative: {self.theta!r}")


@dataclass(frozen=True)
class QuantizedArModel:
    """Quantization of U_n = X_n + V_n with X_n = phi*X_{n-1} + W_n."""

    sigma: float
    phi: float
    nu: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive: {self.sigma!r}")
        if not abs(self.phi) < 1.0:
            raise DomainError(f"stationarity requires |phi| < 1: {self.phi!r}")
        if not self.nu >= 0:
            raise DomainError(f"nu must be non-negative: {self.nu!r}")

    @property
    def stationary_variance(self) -> float:
        return self.sigma**2 / (1.0 - self.phi**2)


ProcessModel = Union[
    PoissonModel, DmaModel, TwoStateHmm, QuantizedMaModel, QuantizedArModel
]


# ---------------------------------------------------------------------------
# quantization and Gaussian interval kernels
# ---------------------------------------------------------------------------


def quantize(s: float) -> int:
    """Nearest integer; half-integer ties round toward the smaller integer."""
    if not math.isfinite(s):
        raise DomainError(f"quantize requires finite input, got {s!r}")
    return int(math.ceil(s - 0.5))


def _interval_probs(idx: np.ndarray, mu: np.ndarray, sd: float) -> np.ndarray:
    """P(N(mu, sd^2) in [i-1/2, i+1/2)) for mu (rows) x idx (columns).

    Uses the erfc tail on whichever side is smaller, so far-tail cells keep
    full relative accuracy instead of cancelling to roundoff.
    """
    mu = np.asarray(mu, dtype=float)
    if sd == 0.0:
        return (idx[None, :] == np.ceil(mu[:, None] - 0.5)).astype(float)
    lo = (idx[None, :] - 0.5 - mu[:, None]) / sd
    hi = lo + 1.0 / sd
    pos = (lo + hi) >= 0.0
    x1 = np.where(pos, lo, -hi)
    x2 = np.where(pos, hi, -lo)
    return 0.5 * (special.erfc(x1 / SQRT2) - special.erfc(x2 / SQRT2))


_CHUNK = 8192


def _tail_halfwidth(sd: float, rel_tol: float) -> int:
    return int(math.ceil(sd * math.sqrt(-2.0 * math.log(rel_tol)))) + 2


def _quantizer_mean(mu: np.ndarray, sd: float, rel_tol: float = 1e-12) -> np.ndarray:
    """E[Q(Z)] for Z ~ N(mu, sd^2), vectorized over mu.

    The integer sum is truncated to a window of half-width ~sd*sqrt(-2 log tol)
    around round(mu); the neglected mass is below rel_tol.
    """
    mu = np.asarray(mu, dtype=float)
    if sd == 0.0:
        return np.ceil(mu - 0.5)
    h = _tail_halfwidth(sd, rel_tol)
    offsets = np.arange(-h, h + 1, dtype=float)
    chunk = max(1, min(_CHUNK, (2 * _CHUNK * _CHUNK) // len(offsets)))
    out = np.empty_like(mu)
    for start in range(0, len(mu), chunk):
        m = mu[start : start + chunk]
        centers = np.rint(m)[:, None] + offsets[None, :]
        lo = (centers - 0.5 - m[:, None]) / sd
        hi = lo + 1.0 / sd
        pos = (lo + hi) >= 0.0
        x1 = np.where(pos, lo, -hi)
        x2 = np.where(pos, hi, -lo)
        p = 0.5 * (special.erfc(x1 / SQRT2) - special.erfc(x2 / SQRT2))
        out[start : start + chunk] = (centers * p).sum(axis=1)
    return out


def _quantized_second_moment(scale: float, series: SeriesSpec | None = None) -> float:
    """E[Q(Z)^2] for Z ~ N(0, scale^2), as an adaptive bilateral series."""
    if scale <= 0.0:
        return 0.0

    def term(k: int) -> float:
        if k == 0:
            return 0.0
        lo = (abs(k) - 0.5) / scale
        hi = (abs(k) + 0.5) / scale
        return k * k * 0.5 * (math.erfc(lo / SQRT2) - math.erfc(hi / SQRT2))

    return bilateral_sum(term, series)


def _cell_grid(weight_sigma: float, slope: float, nodes_per_cell: int):
    """Gauss-Legendre nodes and weights on [-8w, 8w], split at the jumps of
    Q(slope * s), i.e. at s = (j + 1/2) / slope; weights include the N(0, w^2)
    density.  Requires slope != 0."""
    c = 8.0 * weight_sigma
    step = 1.0 / abs(slope)
    j_min = int(math.floor(-c * abs(slope) - 0.5))
    j_max = int(math.ceil(c * abs(slope) + 0.5))
    edges = [(-0.5 + j) * step for j in range(j_min, j_max + 2)]
    edges = [max(min(e, c), -c) for e in edges]
    x, w = np.polynomial.legendre.leggauss(nodes_per_cell)
    s_parts, w_parts = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi - lo <= 0.0:
            continue
        half = 0.5 * (hi - lo)
        s_parts.append(half * x + 0.5 * (lo + hi))
        w_parts.append(half * w)
    s = np.concatenate(s_parts)
    weights = np.concatenate(w_parts)
    weights = weights * np.exp(-0.5 * (s / weight_sigma) ** 2) / (
        weight_sigma * math.sqrt(2.0 * math.pi)
    )
    return s, weights


def _quantized_lag_covariance(
    weight_sigma: float,
    slope_a: float,
    sd_a: float,
    slope_b: float,
    sd_b: float,
    quad: QuadratureSpec | None = None,
    rel_tol: float = 1e-12,
) -> float:
    """E over s ~ N(0, weight_sigma^2) of E[Q(slope_a*s + A)] E[Q(slope_b*s + B)]

    with A ~ N(0, sd_a^2) and B ~ N(0, sd_b^2) independent.  A vanishing sd
    turns the corresponding factor into the bare staircase Q(slope*s); the
    integral is then split at the jumps and done cell by cell."""
    quad = quad or QuadratureSpec()
    if sd_a == 0.0 and slope_a == 0.0:
        return 0.0  # one factor is identically Q(0) = 0
    if sd_b == 0.0 and slope_b == 0.0:
        return 0.0
    if sd_a == 0.0 and sd_b == 0.0:
        raise DomainError("at least one factor must carry Gaussian smoothing")
    if sd_b == 0.0:
        slope_a, sd_a, slope_b, sd_b = slope_b, sd_b, slope_a, sd_a
    if sd_a == 0.0:
        nodes = 8
        prev = math.inf
        est = math.inf
        while nodes <= 512:
            s, w = _cell_grid(weight_sigma, slope_a, nodes)
            vals = np.ceil(slope_a * s - 0.5) * _quantizer_mean(slope_b * s, sd_b, rel_tol)
            prev = est
            est = float(w @ vals)
            if abs(est - prev) < quad.abs_tol:
                return est
            nodes *= 2
        raise ConvergenceError(
            "cellwise quadrature did not converge", estimates=(prev, est)
        )

    def g(s):
        return _quantizer_mean(slope_a * s, sd_a, rel_tol) * _quantizer_mean(
            slope_b * s, sd_b, rel_tol
        )

    return integrate_gaussian_weighted(g, weight_sigma, quad)


def _marginal_pmf(scale: float) -> tuple[np.ndarray, np.ndarray]:
    box = int(math.ceil(10.0 * scale)) + 2
    idx = np.arange(-box, box + 1)
    p = _interval_probs(idx, np.zeros(1), scale)[0]
    return idx, p


def _pmf_entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def _pair_conditional_entropy(
    weight_sigma: float,
    slope_a: float,
    sd_a: float,
    slope_b: float,
    sd_b: float,
    marginal_scale: float,
    tol: float = 1e-7,
    mass_tol: float = 1e-10,
    quad: QuadratureSpec | None = None,
) -> float:
    """H(Y_b | Y_a) for the pair Y_a = Q(slope_a*s + A), Y_b = Q(slope_b*s + B).

    s ~ N(0, weight_sigma^2) is shared; A, B are independent Gaussian.  The
    joint pmf is accumulated on a truncated index box (|i| <= 10*scale + 2)
    over an s-grid that doubles until the entropy moves less than ``tol`` and
    the captured joint mass is within ``mass_tol`` of one.
    """
    quad = quad or QuadratureSpec()
    idx, p_y = _marginal_pmf(marginal_scale)
    a, b = -8.0 * weight_sigma, 8.0 * weight_sigma
    norm = 1.0 / (weight_sigma * math.sqrt(2.0 * math.pi))

    def nodes_weights(level: int):
        if sd_a == 0.0:
            # the conditioning kernel is a bare staircase: use quadrature
            # nodes aligned to its jump cells (level = nodes per cell)
            return _cell_grid(weight_sigma, slope_a, max(level // 64, 4))
        s = np.linspace(a, b, level + 1)
        w = np.full(level + 1, (b - a) / level)
        w[0] *= 0.5
        w[-1] *= 0.5
        w = w * norm * np.exp(-0.5 * (s / weight_sigma) ** 2)
        return s, w

    def joint(level: int) -> np.ndarray:
        s, w = nodes_weights(level)
        p = np.zeros((len(idx), len(idx)))
        for start in range(0, len(s), _CHUNK):
            sc = s[start : start + _CHUNK]
            wc = w[start : start + _CHUNK]
            rows = _interval_probs(idx, slope_a * sc, sd_a)
            cols = _interval_probs(idx, slope_b * sc, sd_b)
            p += rows.T @ (wc[:, None] * cols)
        return p

    def entropy_of(p: np.ndarray) -> tuple[float, float]:
        total = float(p.sum())
        pn = np.clip(p, 0.0, None) / total
        mask = pn > 0.0
        h_joint = float(-(pn[mask] * np.log(pn[mask])).sum())
        rows = pn.sum(axis=1)
        h = h_joint + float((rows * np.log(np.maximum(p_y, 1e-300))).sum())
        return h, total

    panels = 256
    h_prev, _ = entropy_of(joint(panels))
    while panels < quad.max_points:
        panels *= 2
        h, total = entropy_of(joint(panels))
        if abs(h - h_prev) < tol:
            if abs(total - 1.0) < mass_tol:
                return h
            if panels >= quad.max_points:
                break
        h_prev = h
    raise ConvergenceError(
        "joint mass deficit persists; the truncated index box is likely too "
        "small - enlarge the box or the node budget",
        estimates=(h_prev,),
    )


# ---------------------------------------------------------------------------
# Poisson
# ---------------------------------------------------------------------------


def poisson_entropy(model: PoissonModel, tol: float = 1e-12) -> float:
    """Entropy of a Poisson(rate) variable in nats.

    rate*(1 - log rate) + e^{-rate} * sum_k rate^k log(k!) / k!, with the
    series truncated once a geometric tail bound falls below ``tol``.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    lam = model.rate
    log_lam = math.log(lam)
    total = lam * (1.0 - log_lam)
    k = 1
    log_fact = 0.0  # log(k!)
    while True:
        k += 1
        log_fact += math.log(k)
        term = math.exp(k * log_lam - lam - log_fact) * log_fact
        total += term
        # for k >= 4*lam the term ratio is below ~1/2, so the tail is < term
        if k >= max(10.0, 4.0 * lam) and term < 0.5 * tol:
            return total
        if k > 10**6:
            raise ConvergenceError("Poisson entropy series did not converge")


def poisson_me_bound(model: PoissonModel) -> float:
    """Maximum-entropy bound from the Poisson variance (= rate)."""
    return univariate_me_bound(model.rate)


# ---------------------------------------------------------------------------
# DMA(L)
# ---------------------------------------------------------------------------


def dma_covariance(model: DmaModel, k: int) -> float:
    """Autocovariance of the DMA process at lag k >= 0."""
    if k < 0:
        raise DomainError("lag must be non-negative")
    if k == 0:
        return model.innovation_variance
    w = model.mixture_weights
    L = model.order
    if k > L:
        return 0.0
    return model.innovation_variance * sum(w[j] * w[j + k] for j in range(L - k + 1))


def dma_psd(model: DmaModel) -> SpectralDensity:
    """Exact cosine-series PSD of the DMA process (finitely correlated)."""
    coeffs = [dma_covariance(model, k) for k in range(model.order + 1)]
    return SpectralDensity.cosine_series(coeffs)


# ---------------------------------------------------------------------------
# two-state hidden Markov processes
# ---------------------------------------------------------------------------


def hmm_alpha_beta_omega(model: TwoStateHmm) -> tuple[float, float, float]:
    """(alpha, beta, omega) of the binomial-hidden Markov process.

    alpha = delta1*delta2*(p2 - p1)^2, beta = delta1*p1*(1-p1) + delta2*p2*(1-p2),
    omega = 1 - gamma1 - gamma2.
    """
    if not isinstance(model.emission, BinomialEmission):
        raise DomainError("alpha/beta/omega closed form requires a binomial emission")
    d1, d2 = model.stationary
    p1, p2 = model.emission.p1, model.emission.p2
    alpha = d1 * d2 * (p2 - p1) ** 2
    beta = d1 * p1 * (1.0 - p1) + d2 * p2 * (1.0 - p2)
    return alpha, beta, model.omega


def _hmm_mixture_params(model: TwoStateHmm) -> tuple[float, float, float]:
    """(a, b, omega) with R(0) = a + b and R(k) = a*omega^|k|."""
    if isinstance(model.emission, BinomialEmission):
        alpha, beta, omega = hmm_alpha_beta_omega(model)
        n = model.emission.trials
        return n * n * alpha, n * beta, omega
    # Poisson emissions: conditional mean lambda_i, conditional variance lambda_i.
    # Same conditional-moment algebra as the binomial case gives
    # a = delta1*delta2*(lambda2 - lambda1)^2 and b = delta1*lambda1 + delta2*lambda2.
    # No closed form is quoted for this case; validated against simulation only.
    d1, d2 = model.stationary
    l1, l2 = model.emission.rate1, model.emission.rate2
    return d1 * d2 * (l2 - l1) ** 2, d1 * l1 + d2 * l2, model.omega


def hmm_covariance(model: TwoStateHmm, k: int) -> float:
    """Autocovariance of the hidden Markov process at lag k >= 0."""
    if k < 0:
        raise DomainError("lag must be non-negative")
    a, b, omega = _hmm_mixture_params(model)
    return a + b if k == 0 else a * omega**k


def hmm_psd(model: TwoStateHmm) -> SpectralDensity:
    """Rational PSD a*(1 - w^2)/(1 + w^2 - 2w cos) + b of the hidden chain."""
    a, b, omega = _hmm_mixture_params(model)
    return SpectralDensity.markov_mixture(a, b, omega)


def hmm_entropy_bound(model: TwoStateHmm) -> BoundResult:
    """Entropy-rate bound of the hidden Markov process via its PSD."""
    return gaussian_psd_bound(hmm_psd(model))


# ---------------------------------------------------------------------------
# quantized MA(1)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def qma_r0(model: QuantizedMaModel) -> float:
    """R(0) of the quantized MA process: E[Q(X_n)^2], X_n ~ N(0, sigma^2(1+theta^2))."""
    scale = math.hypot(model.sigma, model.sigma * model.theta)
    return _quantized_second_moment(scale)


@lru_cache(maxsize=None)
def qma_r1(model: QuantizedMaModel) -> float:
    """R(1) of the quantized MA process.

    Conditioning on the shared innovation W_n = s factorizes the lag-1
    expectation into E[Q(theta*s + W)] * E[Q(s + theta*W')] integrated
    against the N(0, sigma^2) law of s.  Zero at theta = 0 (independence).
    """
    if model.theta == 0.0:
        return 0.0
    s, t = model.sigma, model.theta
    return _quantized_lag_covariance(s, t, s, 1.0, t * s)


def qma_k_ratio(model: QuantizedMaModel) -> float:
    """K = 2 R(1) / (R(0) + 1/12), the normalized lag-1 coefficient."""
    return 2.0 * qma_r1(model) / (qma_r0(model) + 1.0 / 12.0)


def qma_th1_bound(model: QuantizedMaModel) -> float:
    """PSD-route bound for the quantized MA process, in closed form.

    Equals 1/2 log(2*pi*e*(R0 + 1/12)) plus half the closed-form log-cosine
    integral at K; requires |K| <= 1, which is checked (it is an observed,
    not proven, property).
    """
    from .spectrum import closed_form_log_cos_integral

    k_ratio = qma_k_ratio(model)
    if abs(k_ratio) > 1.0:
        raise InvariantViolationError(
            f"K ratio {k_ratio!r} falls outside [-1, 1] at {model!r}"
        )
    return univariate_me_bound(qma_r0(model)) + 0.5 * closed_form_log_cos_integral(
        k_ratio
    )


def qma_th3_bound(model: QuantizedMaModel) -> float:
    """Order-1 covariance-route bound for the quantized MA process."""
    return tdist_bound_1(qma_r0(model), qma_r1(model)).value


@lru_cache(maxsize=None)
def qma_conditional_entropy(model: QuantizedMaModel, tol: float = 1e-7) -> float:
    """H(Y_{n+1} | Y_n) of the quantized MA process.

    theta = 0 gives an i.i.d. process, where this is the marginal entropy.
    """
    s, t = model.sigma, model.theta
    if t == 0.0:
        _, p = _marginal_pmf(s)
        return _pmf_entropy(p)
    return _pair_conditional_entropy(
        weight_sigma=s,
        slope_a=1.0,
        sd_a=t * s,
        slope_b=t,
        sd_b=s,
        marginal_scale=math.hypot(s, s * t),
        tol=tol,
    )


# ---------------------------------------------------------------------------
# quantized-hidden AR(1)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def qar_r0(model: QuantizedArModel) -> float:
    """R(0) of the quantized-hidden AR process."""
    scale = math.hypot(math.sqrt(model.stationary_variance), model.nu)
    return _quantized_second_moment(scale)


@lru_cache(maxsize=None)
def qar_rk(model: QuantizedArModel, k: int) -> float:
    """R(k), k >= 1, of the quantized-hidden AR process.

    Conditioning on X_0 = s factorizes the expectation into
    E[Q(s + V_0)] * E[Q(phi^k s + W~_k + V_k)] with W~_k ~ N(0, sigma_k^2),
    sigma_k^2 = sigma^2 (1 - phi^{2k}) / (1 - phi^2).  Zero at phi = 0.
    """
    if k < 1:
        raise DomainError("lag must be >= 1")
    if model.phi == 0.0:
        return 0.0
    sigma0 = math.sqrt(model.stationary_variance)
    sigma_k = model.sigma * math.sqrt(
        (1.0 - model.phi ** (2 * k)) / (1.0 - model.phi**2)
    )
    return _quantized_lag_covariance(
        sigma0, 1.0, model.nu, model.phi**k, math.hypot(sigma_k, model.nu)
    )


def qar_th2_bound(model: QuantizedArModel, k: int) -> BoundResult:
    """Order-k covariance-route bound using lags R(0), ..., R(k), 1 <= k <= 4."""
    if not 1 <= k <= 4:
        raise DomainError("k must lie in 1..4")
    values = [qar_r0(model)] + [qar_rk(model, j) for j in range(1, k + 1)]
    return tdist_bound_k(CovarianceSequence(tuple(values)))


@lru_cache(maxsize=None)
def qar_conditional_entropy(model: QuantizedArModel, tol: float = 1e-7) -> float:
    """H(Y_1 | Y_0) of the quantized-hidden AR process."""
    sigma0 = math.sqrt(model.stationary_variance)
    return _pair_conditional_entropy(
        weight_sigma=sigma0,
        slope_a=1.0,
        sd_a=model.nu,
        slope_b=model.phi,
        sd_b=math.hypot(model.sigma, model.nu),
        marginal_scale=math.hypot(sigma0, model.nu),
        tol=tol,
    )
