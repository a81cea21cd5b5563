"""Walk through the classification verdicts on small commutative rings.

Run as: python3 demos/demo_classification.py
"""

from trimod import constructions as con
from trimod.classify import classify

f2 = con.finite_field(2)
f3 = con.finite_field(3)

rings = [
    ("Z/4", con.z_mod(4)),
    ("F_2", f2),
    ("F_2[x]/(x^2)", con.exterior_on_field(f2)),
    ("F_2 x Z/4", con.product_ring(f2, con.z_mod(4))),
    ("Z/8", con.z_mod(8)),
    ("Z/9", con.z_mod(9)),
    ("F_3[x]/(x^2)", con.exterior_on_field(f3)),
    ("F_2[x,y]/(x^2,xy,y^2)", con.square_zero_two_vars(2)),
]

print("Which stable module categories carry the expected triangulation?")
print()
for name, R in rings:
    v = classify(R, 0)
    mark = "yes" if v.is_delta else f"no  ({v.first_reason})"
    print(f"  {name:<24} {mark}")

print()
print("The same question after one suspension needs a unit of degree 3|x| + 1.")
for ydeg in (2, 3):
    R = con.laurent_exterior(3, 1, ydeg)
    v = classify(R, 1)
    mark = "yes" if v.is_delta else f"no  ({v.first_reason}: {v.factors[0][1].reason_detail})"
    print(f"  F_3[y,y^-1][x]/(x^2), |y| = {ydeg}:  {mark}")
