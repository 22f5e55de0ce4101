"""Simulation oracles: seeded sample paths and empirical estimators.

Paths are integer-valued, stationary from the first sample, and bit-identical
under the same (model, n, seed).  Standard errors use batch means (64 batches)
because the paths are autocorrelated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .numerics import DomainError
from .processes import (
    BinomialEmission,
    DmaModel,
    PoissonEmission,
    PoissonModel,
    ProcessModel,
    QuantizedArModel,
    QuantizedMaModel,
    TwoStateHmm,
)

N_BATCHES = 64


@dataclass(frozen=True, eq=False)
class SamplePath:
    """An integer realization plus everything needed to regenerate it."""

    model: ProcessModel
    seed: int
    values: np.ndarray

    @property
    def length(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    std_error: float
    n_samples: int

    def __post_init__(self):
        if not self.std_error >= 0:
            raise DomainError("std_error must be non-negative")


def _quantize_array(x: np.ndarray) -> np.ndarray:
    # same tie rule as processes.quantize: half-integers go to the smaller integer
    return np.ceil(x - 0.5).astype(np.int64)


def _two_state_chain(rng: np.random.Generator, g1: float, g2: float, n: int) -> np.ndarray:
    """States in {0, 1} (0 = first state), started from the stationary law.

    For g1 + g2 <= 1 the chain is sampled through its regeneration
    representation (resample from the stationary-conditional law with
    probability g1 + g2, else hold), which vectorizes; otherwise a direct
    sequential sweep is used.
    """
    r = g1 + g2
    x0 = 1 if rng.random() < g1 / r else 0
    u = rng.random(n)
    if r <= 1.0:
        reset = u < r
        fresh = (u < g1).astype(np.int64)  # P(state 1 | reset) = g1 / r
        pos = np.where(reset, np.arange(n), -1)
        last = np.maximum.accumulate(pos)
        return np.where(last >= 0, fresh[np.maximum(last, 0)], x0)
    states = np.empty(n, dtype=np.int64)
    cur = x0
    for i in range(n):
        if cur == 0:
            cur = 1 if u[i] < g1 else 0
        else:
            cur = 0 if u[i] < g2 else 1
        states[i] = cur
    return states


def simulate(model: ProcessModel, n: int, seed: int) -> SamplePath:
    """Draw a stationary-start path of length n, deterministic given seed.

    DMA innovations are Poisson(innovation_variance): integer-valued with
    exactly the requested variance (the mean offset does not enter any
    covariance).  The AR chain starts from its stationary law; MA/DMA get
    the needed pre-samples as burn-in.
    """
    if n < 1:
        raise DomainError("path length must be >= 1")
    rng = np.random.default_rng(seed)

    if isinstance(model, PoissonModel):
        values = rng.poisson(model.rate, n).astype(np.int64)
    elif isinstance(model, DmaModel):
        L = model.order
        innovations = rng.poisson(model.innovation_variance, n + L).astype(np.int64)
        theta = rng.choice(L + 1, size=n, p=np.asarray(model.mixture_weights))
        values = innovations[np.arange(n) + L - theta]
    elif isinstance(model, TwoStateHmm):
        states = _two_state_chain(rng, model.gamma1, model.gamma2, n)
        em = model.emission
        if isinstance(em, BinomialEmission):
            p = np.where(states == 0, em.p1, em.p2)
            values = rng.binomial(em.trials, p).astype(np.int64)
        elif isinstance(em, PoissonEmission):
            lam = np.where(states == 0, em.rate1, em.rate2)
            values = rng.poisson(lam).astype(np.int64)
        else:
            raise DomainError(f"unknown emission {em!r}")
    elif isinstance(model, QuantizedMaModel):
        w = rng.normal(0.0, model.sigma, n + 1)
        values = _quantize_array(w[1:] + model.theta * w[:-1])
    elif isinstance(model, QuantizedArModel):
        sigma0 = math.sqrt(model.stationary_variance)
        x0 = rng.normal(0.0, sigma0)
        w = rng.normal(0.0, model.sigma, n)
        x = signal.lfilter([1.0], [1.0, -model.phi], w, zi=np.array([model.phi * x0]))[0]
        v = rng.normal(0.0, model.nu, n)
        values = _quantize_array(x + v)
    else:
        raise DomainError(f"unknown process model {model!r}")
    return SamplePath(model=model, seed=int(seed), values=values)


def _batch_std_error(samples: np.ndarray) -> float:
    width = len(samples) // N_BATCHES
    if width < 1:
        raise DomainError("path too short for 64-batch standard errors")
    batches = samples[: N_BATCHES * width].reshape(N_BATCHES, width).mean(axis=1)
    return float(batches.std(ddof=1) / math.sqrt(N_BATCHES))


def empirical_covariance(path: SamplePath, k: int) -> EstimateWithError:
    """Sample autocovariance at lag k with a batch-means standard error."""
    if k < 0:
        raise DomainError("lag must be non-negative")
    if k >= path.length / 10:
        raise DomainError("lag must be below one tenth of the path length")
    y = path.values.astype(float)
    y -= y.mean()
    products = y[k:] * y[: len(y) - k]
    return EstimateWithError(
        value=float(products.mean()),
        std_error=_batch_std_error(products),
        n_samples=len(products),
    )


def _plugin_conditional_entropy(a: np.ndarray, b: np.ndarray) -> float:
    base = min(int(a.min()), int(b.min()))
    width = max(int(a.max()), int(b.max())) - base + 1
    if width > 4096:
        raise DomainError(
            f"alphabet span {width} is too large for the plug-in pair estimator"
        )
    code = (a - base) * width + (b - base)
    joint = np.bincount(code, minlength=width * width).astype(float)
    rows = np.bincount(a - base, minlength=width).astype(float)
    total = float(len(a))
    joint = joint[joint > 0]
    rows = rows[rows > 0]
    return float(((rows * np.log(rows)).sum() - (joint * np.log(joint)).sum()) / total)


def empirical_conditional_entropy(path: SamplePath) -> EstimateWithError:
    """Plug-in estimate of H(Y_1 | Y_0) from pair frequencies.

    Downward-biased (plug-in); the batch-means error captures sampling
    spread, not the bias.
    """
    if path.length < 10**5:
        raise DomainError("need at least 1e5 samples for the plug-in estimator")
    a = path.values[:-1]
    b = path.values[1:]
    value = _plugin_conditional_entropy(a, b)
    width = len(a) // N_BATCHES
    per_batch = np.array(
        [
            _plugin_conditional_entropy(
                a[i * width : (i + 1) * width], b[i * width : (i + 1) * width]
            )
            for i in range(N_BATCHES)
        ]
    )
    std_error = float(per_batch.std(ddof=1) / math.sqrt(N_BATCHES))
    return EstimateWithError(value=value, std_error=std_error, n_samples=len(a))
