"""How close is the SWKB integral to n*pi for multi-indexed systems?"""
# %%
import math

from swkblab.deform import build_multi_indexed
from swkblab.swkb import swkb_integral
from swkblab.systems import SystemSpec

dsys = build_multi_indexed(SystemSpec("L", 5), d_I=[1, 2], d_II=[2, 3])
print(dsys.label())

# %% the error is largest at small n and decays as n grows
print(f"{'n':>3} {'I/pi':>12} {'Err':>12} {'scaled':>8}")
for n in range(1, 21):
    r = swkb_integral(dsys, n)
    scaled = math.copysign(2 ** math.log10(abs(r.err)), r.err)
    print(f"{n:>3} {r.I_over_pi:>12.8f} {r.err:>12.3e} {scaled:>8.3f}")

# %% larger g pushes the type II X1 system towards exactness
for g in (3, 10, 30):
    d = build_multi_indexed(SystemSpec("L", g), d_II=[1])
    worst = max(abs(swkb_integral(d, n).err) for n in range(1, 21))
    print(f"g = {g:>2}: max |Err| = {worst:.2e}")
