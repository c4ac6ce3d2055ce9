"""
The closed-form bounds
======================

C and K are unknown universal constants and default to 1, so these numbers
show how the bounds scale, not what they guarantee.
"""

# %%
from sepcompress import bounds

print(bounds.rip_sample_bound(s=4, n=1000, delta=0.5, epsilon=0.05))
print(bounds.sparse_compression_length(R=1.2, w0_norm=1.5, s=2, n=1000, epsilon=0.05))

# %%
# Smallest m for which 3/2 of the JL bound drops below 1/||w0||^2.
print(bounds.min_general_compression_length(width=3.0, radius=1.0, epsilon=0.05, K=1.0,
                                            w0_norm=1.2, m_cap=10**9))

# %%
# Generalization before and after compression.
L = bounds.gen_bound_L(R=1.0, z=2.0, delta_conf=0.05, sample_size=10_000)
print(L, bounds.compressed_gen_bound(L, eta=0.1, ws_norm=2.0))

# %%
print(bounds.bounds_report({"R": 1.2, "w0_norm": 1.5, "s": 2, "n": 1000,
                            "sample_size": 10_000, "eta": 0.05}))
