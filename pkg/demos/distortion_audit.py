"""
How much does a random matrix distort inner products?
=====================================================

eta is the largest change in any pairwise inner product of the set.  For
Q/sqrt(m) it shrinks roughly like 1/sqrt(m).
"""

# %%
import numpy as np

from sepcompress import audit, generate, rip_constant_exact

rng = np.random.default_rng(0)
A = rng.standard_normal((100, 256))
A /= np.linalg.norm(A, axis=1, keepdims=True)

# %%
for m in (16, 64, 256):
    etas = [audit(generate(m, 256, "gaussian", seed=r), A).eta_ip for r in range(10)]
    print(f"m={m:4d}  mean eta={np.mean(etas):.3f}  sqrt(m)*eta={np.sqrt(m) * np.mean(etas):.2f}")

# %%
# Squared distances and inner products carry the same information.
rep = audit(generate(32, 256, "rademacher", seed=1), np.vstack([A, np.zeros(256)]))
print(rep.eta_sd, "<=", 4 * rep.eta_ip, "and", rep.eta_ip, "<=", 1.5 * rep.eta_sd)

# %%
# For sparse data the exact restricted isometry constant bounds eta.
Q = generate(8, 10, "gaussian", seed=2)
print(rip_constant_exact(Q, 2))
