"""Build the two-generator DG algebra and inspect its homology.

The model has generators a and u with d(a) = u^2 and the relation
a*u + u*a = -v.  Its homology is free of rank one over k[x]/(x^2), which is
what makes the cone construction produce honest triangles.

Run as: python3 demos/demo_dg_model.py
"""

from trimod import dga as dg
from trimod.errors import ParityObstruction

alg = dg.build_two_generator_dga(3, 1, 1)
print(f"model at p=3, |u|={alg.i}, shift n={alg.n}: |a|={alg.adeg}, |v|={alg.vdeg}")

a, u = alg.gen_a(), alg.gen_u()
print("d(a) =", alg.differential(a))
print("d(u) =", alg.differential(u))
print("a*u + u*a =", alg.multiply(a, u) + alg.multiply(u, a))

M = dg.algebra_module(alg)
H = dg.homology(M, (-4, 4))
print()
print("homology dimensions by degree:")
for q in range(-4, 5):
    print(f"  H_{q}: {H[q]['dim']}")

print()
print("not every parameter triple works; the differential must kill both")
print("defining relations:")
try:
    dg.build_two_generator_dga(3, 0, 0)
except ParityObstruction as e:
    print("  (p=3, i=0, n=0) ->", e)
