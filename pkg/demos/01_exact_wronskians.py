"""Exact Wronskians of seed functions and the deformed ground state.

Everything below is rational arithmetic until the very last line of each cell.
"""
# %% the two Hermite polynomials removed by a Krein-Adler deletion of levels 3, 4
from swkblab.exact_poly import PrefactoredFunction, classical_poly, wronskian, evaluate
from swkblab.systems import SystemSpec, VirtualStateLabel, eigenfunction, virtual_state

H3, H4 = classical_poly("hermite", 3), classical_poly("hermite", 4)
print("H3 =", H3)
print("H4 =", H4)

# %% W[H3, H4] has no real zeros, so the deformed potential is regular
w = wronskian([PrefactoredFunction(H3), PrefactoredFunction(H4)])
print("W[H3, H4] =", w.poly)

# %% multi-indexed Laguerre seeds, g = 5: one type I and one type II virtual state
spec = SystemSpec("L", 5)
seeds = [virtual_state(spec, VirtualStateLabel("I", 1)), virtual_state(spec, VirtualStateLabel("II", 2))]
den = wronskian(seeds)
num = wronskian(seeds + [eigenfunction(spec, 0)])
print("denominator:", den)
print("numerator:  ", num)

# %% values at a few points (z is the squared oscillator coordinate)
for z in (0.5, 2.0, 8.0):
    print(f"z = {z:4.1f}   W[seeds] = {evaluate(den, z): .6e}")
