"""Finite-difference check that the deformed potentials have the predicted spectra."""
# %%
from swkblab.deform import build_krein_adler, build_multi_indexed, deformed_potential
from swkblab.systems import SystemSpec
from swkblab.verify import isospectrality_report

systems = [build_multi_indexed(SystemSpec("L", 5), [1], [2]),
           build_multi_indexed(SystemSpec("J", 5, 6), [1, 2], [2, 3]),
           build_krein_adler(SystemSpec("H"), 3),
           build_krein_adler(SystemSpec("L", 3), 3)]

# %% multi-indexed systems keep every level; Krein-Adler systems lose two
for dsys in systems:
    rep = isospectrality_report(dsys, k=5)
    levels = ", ".join(f"{lv.numeric:.6f}" for lv in rep.levels)
    print(f"{dsys.label():32s} [{levels}]  max dev {rep.max_deviation:.1e}")

# %% the deformed potential itself, sampled near the origin
V = deformed_potential(systems[2])
print([round(float(V(x)), 4) for x in (-1.0, -0.5, 0.0, 0.5, 1.0)])
