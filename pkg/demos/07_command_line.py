# %% [markdown]
# # The same pipeline from the command line
#
# `emdscales synth` writes a price CSV; `report` writes one table per
# input and a cross-sectional aggregate when given several.

# %%
import csv
import tempfile
from pathlib import Path

from emdscales.cli import main

work = Path(tempfile.mkdtemp())
files = []
for seed in range(3):
    path = work / f"IDX{seed}.csv"
    main(["synth", "fbm", "--n", "4000", "--seed", str(seed), "--offset", "1000", "--out", str(path)])
    files.append(str(path))

rc = main(["report", *files, "--out-dir", str(work / "out")])
print("exit code", rc)

# %%
with open(work / "out" / "aggregate_report.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        print(f"IMF{row['imf_index']}: mean H {float(row['mean_H']):.2f} +/- {float(row['two_sigma_H']):.2f}")
