"""
Does separability survive compression?
======================================

If eta < 1/||w*||^2, the rescaled hyperplane Q w* / (1 - eta ||w*||^2)
separates the compressed set with functional margin at least 1.
"""

# %%
from sepcompress import GenConfig, generate, generate_separable, report_emit, sweep, verify

cfg = GenConfig(n=30, count=50, gamma=0.95, R=1.06, seed=4)
data, prior = generate_separable(cfg)

# %%
# One matrix, checked end to end.
rep = verify(data, generate(45, 30, "gaussian", seed=9), prior)
print(rep.verdict, rep.eta_ip, "<", rep.threshold_star)
print("margin after compression:", rep.margin_after_scaled, " LP separable:", rep.lp_separable)

# %%
# Many matrices per m: the fraction below threshold rises with m.
res = sweep(cfg, "gaussian", [8, 16, 32, 64, 128], repetitions=20, seed=1, check_lp=False)
print(report_emit(res, "csv"))
