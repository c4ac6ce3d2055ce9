"""
Hard-margin SVM from the two class hulls
========================================

The maximum-margin hyperplane of a separable set is fixed by the closest
pair of points between the convex hulls of the two classes.
"""

# %%
# A small separable set in the plane.
import numpy as np

from sepcompress import SupportSet, fit, functional_margin, is_separable_lp

X = np.array([[2.0, 1.0], [3.0, 2.5], [2.5, -0.5],
              [-1.0, 0.0], [-2.0, 1.5], [-1.5, -1.0]])
y = np.array([1, 1, 1, -1, -1, -1])
data = SupportSet(X, y)

# %%
# Nearest hull points, and the hyperplane built from them.
h, w = fit(data)
print("x+ =", w.x_plus, " x- =", w.x_minus)
print("delta =", w.delta, " ||w*|| * delta =", h.norm * w.delta)
print("w* =", h.w, " b* =", h.b)
print("functional margin:", functional_margin(h, data))

# %%
# The convex weights say which points are support vectors.
print("positive weights:", np.round(w.coeffs_plus, 6))
print("negative weights:", np.round(w.coeffs_minus, 6))

# %%
# An LP finds *a* separator, not the widest one, so its norm is at least ||w*||.
lp = is_separable_lp(data)
print(lp.status, lp.hyperplane.norm, ">=", h.norm)
