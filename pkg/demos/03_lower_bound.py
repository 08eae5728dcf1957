# %% [markdown]
# One weakly informative feature
#
# x is uniform on {-1, +1}^d and y copies x_j with probability 1/2 + p. The
# risk has a closed form, so excess risk can be tracked exactly while AER
# runs. Finding j takes longer as d grows.

# %%
import numpy as np

from attrlearn import AerConfig, default_lambda, rng_stream, train_aer
from attrlearn.datasets import LowerBoundSpec, gen_lowerbound, risk_lowerbound

k, B, target = 4, 1.0, 0.02
for d, horizon in ((8, 20_000), (16, 40_000), (32, 120_000)):
    spec = LowerBoundSpec(d, 1, 0.2)
    data = gen_lowerbound(spec, horizon, rng_stream(d, "lb"))
    checkpoints = np.unique(np.geomspace(100, horizon, 25).astype(int))
    lam = default_lambda(B, B, d, horizon, k)
    model = train_aer(data, AerConfig(k=k, lam=lam, B=B, seed=d), checkpoints=checkpoints)
    excess = {m: risk_lowerbound(w, spec) - spec.optimal_risk for m, w in model.trace["checkpoints"].items()}
    reached = next((m for m in checkpoints if excess[m] <= target), None)
    print(f"d={d:2d}: excess at m={horizon} is {excess[horizon]:.4f}; "
          f"first below {target} at m={reached}; argmax |w| = {np.argmax(np.abs(model.weights))} (j = {spec.j})")
