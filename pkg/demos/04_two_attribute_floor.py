# %% [markdown]
# Why test-time budgets hurt
#
# y = (x1 + x2 + x3)/3 with x uniform on sign patterns is learnable exactly,
# but a predictor allowed to look at only two attributes at test time cannot
# beat squared error 1/9, however much training data it gets.

# %%
from itertools import combinations

from attrlearn.datasets import two_attribute_floor

print("all three attributes:", round(two_attribute_floor(attributes=(0, 1, 2)), 12))
for size in (2, 1):
    for subset in combinations(range(3), size):
        print(f"attributes {subset}: floor {two_attribute_floor(attributes=subset):.6f}")
print("1/9 =", 1 / 9, " 2/9 =", 2 / 9)
