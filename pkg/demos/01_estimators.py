# %% [markdown]
# Budgeted estimators
#
# With only k attributes of an example visible, the learners build random
# stand-ins for x, x x^T and the squared-loss gradient whose expectations are
# the real thing. Averaging many draws shows it.

# %%
import numpy as np

from attrlearn import AttributeOracle, rng_stream
from attrlearn.estimators import estimate_gradient, estimate_gram_and_instance, estimate_instance

rng = rng_stream(0, "demo-estimators")
d, k = 6, 4
x = rng.uniform(-1, 1, d)
y = 0.3
w = rng.normal(size=d) / d

# %% instance estimate: k of d coordinates, scaled by d/k
draws = np.array([estimate_instance(AttributeOracle(x, y, k), k, rng) for _ in range(50_000)])
print("x          ", np.round(x, 3))
print("mean of v  ", np.round(draws.mean(0), 3))
print("nonzeros per draw:", np.count_nonzero(draws[0]))

# %% Gram estimate from k/2 random attribute pairs
acc = np.zeros((d, d))
n = 50_000
for _ in range(n):
    A, _ = estimate_gram_and_instance(AttributeOracle(x, y, k), k, rng)
    acc += A
print("max |mean(A) - x x^T| =", np.abs(acc / n - np.outer(x, x)).max())

# %% gradient estimate: half the budget for v, half to sample a prediction
grads = np.array([estimate_gradient(AttributeOracle(x, y, k), w, k, rng).g for _ in range(50_000)])
print("true gradient", np.round(2 * (w @ x - y) * x, 3))
print("mean of g    ", np.round(grads.mean(0), 3))
print("per-coordinate std", np.round(grads.std(0), 2))  # large: the price of seeing k attributes
