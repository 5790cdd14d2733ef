# %% [markdown]
# # Long-term component against annual fundamentals
#
# The long-term reconstruction is sampled once per fiscal year (the last
# trading day on or before each year end) and correlated with sale, net
# profit and cash from operations.

# %%
from datetime import date

import numpy as np

from emdscales import FundamentalsRow, FundamentalsTable, analyze, correlate, gen_fbm
from emdscales.synth import business_days

days = business_days(3000, date(2007, 1, 1))
x = gen_fbm(0.7, len(days), seed=2) + 200.0
a = analyze(x)

# %% [markdown]
# Invent fundamentals that follow the long-term level with some noise.

# %%
rng = np.random.default_rng(0)
spread = np.std(a.report.x_lt)
rows = []
for year in range(2007, 2018):
    i = max(k for k, d in enumerate(days) if d <= date(year, 3, 31))
    level = a.report.x_lt[i]
    sale = 10 * (level + rng.normal(0, 0.3 * spread))
    net_profit = level + rng.normal(0, spread)
    rows.append(FundamentalsRow(date(year, 3, 31), sale, net_profit, rng.normal(50, 10)))
table = FundamentalsTable("DEMO", rows)

rep = correlate(days, a.report.x_lt, table)
print(f"{rep.n_years} years: r_sale {rep.r_sale:.3f}  r_np {rep.r_np:.3f}  r_coa {rep.r_coa:.3f}")
print("rank correlation of sale:", round(correlate(days, a.report.x_lt, table, method="spearman").r_sale, 3))
