# %% [markdown]
# # Characteristic time scale of each IMF
#
# The analytic signal gives an instantaneous phase; its slope is the
# instantaneous frequency. The median over the interior of the series
# turns that into one representative period per IMF.

# %%
import numpy as np

from emdscales import analytic_signal, characteristic_timescale, decompose, gen_fbm, tau_label

t = np.arange(1000)
profile = characteristic_timescale(np.sin(2 * np.pi * t / 20))
print(f"tone of period 20: tau = {profile.tau:.2f} samples")

# %% [markdown]
# The envelope of a pure tone is flat, which is what makes the phase meaningful.

# %%
z = analytic_signal(np.cos(2 * np.pi * np.arange(512) / 32))
print("envelope range:", np.ptp(np.abs(z)))

# %% [markdown]
# On a random walk the time scales roughly double from one IMF to the
# next. Labels use 21 trading days per month and 252 per year.

# %%
d = decompose(gen_fbm(0.5, 5700, seed=0) + 100.0)
for k, imf in enumerate(d.imfs, start=1):
    tau = characteristic_timescale(imf).tau
    print(f"IMF{k}: {tau:8.1f} days  ({tau_label(tau)})")
