"""The SWKB integral does not depend on hbar or omega once they are restored."""
# %%
from swkblab.deform import build_multi_indexed
from swkblab.swkb import swkb_integral, swkb_integral_dimensionful
from swkblab.systems import SystemSpec

dsys = build_multi_indexed(SystemSpec("J", 5, 6), [1], [2])
for n in (1, 5, 12):
    reduced = swkb_integral(dsys, n).I
    dims = [swkb_integral_dimensionful(dsys, n, hbar, omega) for hbar, omega in ((1, 1), (0.5, 2.3), (4, 0.1))]
    print(n, f"{reduced:.12f}", " ".join(f"{d:.12f}" for d in dims))
