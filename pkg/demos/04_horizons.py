# %% [markdown]
# # Short- and long-term horizons
#
# Fast IMFs of a price series behave like noise (H near 0.5) while slow
# ones are persistent. Classifying each IMF and summing by class splits
# the series into a short-term part x_st and a long-term part x_lt.

# %%
import numpy as np

from emdscales import analyze, gen_fbm

x = gen_fbm(0.5, 5700, seed=4) + 1000.0
a = analyze(x)
for dg, label in zip(a.diagnostics, a.labels):
    print(f"IMF{dg.imf_index}: tau {dg.tau_days:7.1f}  H {dg.h:5.2f}  {label}")

# %% [markdown]
# The two horizons partition the series exactly.

# %%
rep = a.report
print("max |x_st + x_lt - x| =", np.max(np.abs(rep.x_st + rep.x_lt - x)))

# %% [markdown]
# Pure tones have no power law in R/S, so their H fit is poor and the
# time scale decides instead: periods up to about 3 months are short-term,
# 5 months and longer are long-term.

# %%
from emdscales import gen_tone_mix

tones, _ = gen_tone_mix([21, 63, 126, 252], np.ones(4), 4096, noise_sd=0.2, seed=3)
b = analyze(tones)
for dg, label in zip(b.diagnostics, b.labels):
    print(f"IMF{dg.imf_index}: tau {dg.tau_days:7.1f}  r2 {dg.hurst.r2 if dg.hurst else float('nan'):.2f}  {label}")
