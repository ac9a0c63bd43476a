"""
Mosaics of designs
==================

A function f: X x S -> A is the same thing as a mosaic: a family of
incidence structures, one per value, whose matrices partition the
all-ones matrix.  Seed-optimal hash functions correspond to mosaics
with strong design-theoretic structure.
"""

from mosaichash import (
    Resolution,
    affine,
    analyze_structure,
    check_structure_theorems,
    dual_affine,
    dual_mosaic,
    find_resolution,
    mosaic_from_function,
    mosaic_from_resolution,
    sum_mosaic,
)

f = affine(2, 2)
m = mosaic_from_function(f)
print(f"{f.name} decomposes into {len(m.members)} incidence structures:")
for a, d in zip(m.a_labels, m.members):
    p = analyze_structure(d)
    print(f"  value {a}: v={p.v} b={p.b} k={p.k} r={p.r} lambda={p.lam} "
          f"BIBD={p.is_bibd}")

# an optimal collision-flat function gives a mosaic of BIBDs; the checker
# verifies all such implications in one call
rep = check_structure_theorems(f)
for imp in rep.implications:
    print(f"  implication {imp['name']}: ok={imp['ok']}")
print()

# for the dual affine family the tight bound is the variance bound, and
# the structure lives in the dual: quasi-symmetric designs
g = dual_affine(2, 2)
for d in dual_mosaic(mosaic_from_function(g)).members:
    p = analyze_structure(d)
    print(f"{g.name} dual member: quasi-symmetric={p.quasi_symmetric} "
          f"intersections={p.intersection_numbers}")
print()

# gluing all members side by side gives a single resolvable structure;
# resolving it and labeling the classes recovers a mosaic
total = sum_mosaic(m)
p = analyze_structure(total)
print(f"sum of {f.name}: v={p.v} b={p.b} k={p.k} r={p.r} BIBD={p.is_bibd}")
res = find_resolution(total)
assert isinstance(res, Resolution)
print(f"resolution into {len(res.classes)} parallel classes: {res.classes}")
back = mosaic_from_resolution(total, res, [list(range(len(c))) for c in res.classes])
print(f"rebuilt a mosaic with {len(back.members)} members from the resolution")
