"""Trust, but verify: seeded simulation against the analytic formulas.

Every covariance formula in the package is double-checked by an independent
oracle: simulate a long path, estimate the covariance empirically with
batch-means error bars, and compare.  This script runs a small version of
that suite (1e6 samples; the test suite uses 1e7).
"""

import entrobound as eb
from entrobound import montecarlo as mc

N = 10**6

cases = [
    ("DMA(2)", eb.DmaModel((0.3, 0.3, 0.4), 2.0), lambda m, k: eb.dma_covariance(m, k), range(3)),
    (
        "binomial-HMM",
        eb.TwoStateHmm(0.1, 0.3, eb.BinomialEmission(10, 0.2, 0.8)),
        lambda m, k: eb.hmm_covariance(m, k),
        range(3),
    ),
    (
        "quantized MA",
        eb.QuantizedMaModel(1.0, 1.0),
        lambda m, k: eb.qma_r0(m) if k == 0 else eb.qma_r1(m),
        range(2),
    ),
    (
        "quantized AR",
        eb.QuantizedArModel(1.0, 0.9, 4.0),
        lambda m, k: eb.qar_r0(m) if k == 0 else eb.qar_rk(m, k),
        range(3),
    ),
]

for name, model, covariance, lags in cases:
    path = mc.simulate(model, N, seed=7)
    print(name)
    for k in lags:
        est = mc.empirical_covariance(path, k)
        ana = covariance(model, k)
        z = (est.value - ana) / est.std_error
        print(f"  lag {k}: analytic {ana:>9.5f}   empirical {est.value:>9.5f} "
              f"+- {est.std_error:.5f}   ({z:+.2f} SE)")

print()
qma = eb.QuantizedMaModel(1.0, 1.0)
est = mc.empirical_conditional_entropy(mc.simulate(qma, N, seed=11))
print(f"plug-in conditional entropy (downward-biased): {est.value:.5f} +- {est.std_error:.5f}")
print(f"analytic value:                                {eb.qma_conditional_entropy(qma):.5f}")

print()
print("Same seed, same path - rerun this script and every number repeats.")
