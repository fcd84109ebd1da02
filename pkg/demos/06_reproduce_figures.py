"""Regenerate every figure dataset into ./figures, as ``swkblab figure <id>`` would."""
# %%
from pathlib import Path

from swkblab.scenario import FIGURE_IDS, reproduce_figure

out = Path("figures")
for fig_id in FIGURE_IDS:
    results, manifest = reproduce_figure(fig_id, out)
    for res in results:
        print(res.summary())
    print("  manifest:", manifest)
