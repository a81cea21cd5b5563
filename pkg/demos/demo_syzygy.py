"""Iterated syzygies over Z/4: three steps return every module to itself.

Run as: python3 demos/demo_syzygy.py
"""

from trimod import constructions as con
from trimod import modules as md

R = con.z_mod(4)
k = md.residue_module(R)

print("Omega k over Z/4, iterated:")
current = k
for step in range(1, 7):
    current = md.heller_shift(current)
    back = md.stable_iso_test(current, k)
    print(f"  Omega^{step} k: size {current.size()}, stably k: {back}")

print()
print("the inverse syzygy undoes one step:")
inv = md.heller_inverse(md.heller_shift(k))
print("  Omega^-1 Omega k stably k:", md.stable_iso_test(inv, k))
