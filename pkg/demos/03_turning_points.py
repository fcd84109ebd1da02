"""Deleting two levels puts a bump into W^2 and splits the classical region."""
# %%
import numpy as np

from swkblab.deform import build_krein_adler, logderiv_sq
from swkblab.swkb import find_turning_intervals, swkb_integral
from swkblab.systems import SystemSpec

dsys = build_krein_adler(SystemSpec("H"), 4)
w2 = logderiv_sq(dsys)

# %% a coarse text plot of W^2 against the n = 1 energy line E = 2
for xi in np.linspace(-2.5, 2.5, 26):
    v = w2(xi)
    bar = "#" * min(int(v * 8), 60)
    print(f"{xi:6.2f} {v:7.3f} {bar}{'|' if v < 2 else ''}")

# %% three disjoint intervals contribute to the integral
r = swkb_integral(dsys, 1)
for a, b in r.intervals:
    print(f"interval ({a:.6f}, {b:.6f})")
print(f"I/pi = {r.I_over_pi:.6f}, Err = {r.err:.3e}")

# %% above the bump the region is connected again
print(len(find_turning_intervals(w2, 30.0)), "interval(s) at E = 30")
