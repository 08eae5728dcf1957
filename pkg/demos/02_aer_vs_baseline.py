# %% [markdown]
# AER against Baseline on a dense linear task
#
# Baseline estimates the whole d x d correlation matrix from k/2 pairs per
# example, so its noise grows like d^2/k. AER only needs the gradient, whose
# noise grows like d/k. At small d the two are close; as d grows Baseline
# falls behind.

# %%
import numpy as np

from attrlearn import rng_stream
from attrlearn.datasets import LinearTaskSpec, dense_weights, gen_linear
from attrlearn.evaluation import learning_curve

k = 4
prefixes = [500, 2000, 8000, 20_000]

for d in (20, 100):
    spec = LinearTaskSpec(dense_weights(d, 1.0, rng=rng_stream(d, "w")), 0.1, clip=True)
    train = gen_linear(spec, d, prefixes[-1], rng_stream(d, "train"))
    test = gen_linear(spec, d, 20_000, rng_stream(d, "test"))
    print(f"\nd = {d}   (noise floor ~ {0.1 ** 2 / 3:.4f})")
    print(f"{'m':>7} {'aer':>9} {'baseline':>9} {'naive':>9} {'lasso':>9}")
    curves = {a: learning_curve(train, test, a, {"B": 1.0}, prefixes, [0], k)
              for a in ("aer", "baseline", "naive", "lasso")}
    for i, m in enumerate(prefixes):
        row = " ".join(f"{curves[a][i].test_sq_error:9.4f}" for a in curves)
        print(f"{m:7d} {row}")

# %% attributes seen: the full-information learner pays d per example
pts = curves["lasso"]
print("\nlasso attributes at m=500:", pts[0].attributes_used, " aer:", curves["aer"][0].attributes_used)
