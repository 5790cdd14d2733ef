# %% [markdown]
# # Energy share of each IMF
#
# Normalized variance is each IMF's root-sum-square amplitude divided by
# the total over all IMFs. The residue is left out.

# %%
from emdscales import decompose, gen_tone_mix, normalized_variance

periods = [5, 14, 40, 110, 300, 800, 2000, 5000]
amplitudes = [1.0] * 5 + [5.0] * 3
series, _ = gen_tone_mix(periods, amplitudes, 16384)
nv = normalized_variance(decompose(series))
for k, v in enumerate(nv, start=1):
    print(f"IMF{k}: {v:.3f}")
print(f"sum {nv.sum():.15f}")
print(f"slowest three {nv[-3:].sum():.3f} vs fastest five {nv[:5].sum():.3f}")
