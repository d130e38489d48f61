"""The lattice of supernormal subgroups and theories induced on subquotients.

A subgroup is supernormal when it is a union of superclasses.  These
subgroups form a modular lattice under intersection and product.  The
theory restricts to any supernormal subgroup, deflates to the quotient by
one, and the two routes to a subquotient N/H always agree.  The star
product rebuilds a (generally coarser) theory of G from the two pieces.
"""

import json

from superchar import (
    deflate,
    norm_lattice,
    refines,
    restrict,
    star_of_restriction_deflation,
    subquotient,
    validated_sct,
)
from superchar.corpus import corpus_group, nine_part_partition_path
from superchar.groups import subgroup_generated
from superchar.io import parse_partition

group = corpus_group("c3xc6")
with open(nine_part_partition_path(), "r", encoding="utf-8") as fh:
    sct = validated_sct(group, parse_partition(json.load(fh), group), name="c3xc6-nine")

lattice = norm_lattice(sct)
print("Supernormal subgroups of the 9-part theory on C3 x C6:")
for i, node in enumerate(lattice.nodes):
    labels = ", ".join(group.label_of(g) for g in sorted(node))
    print(f"  [{i}] order {len(node)}: {{{labels}}}")
print("Hasse edges (lower covers upper):", list(lattice.hasse_edges))

lab = {s: i for i, s in enumerate(group.labels)}
y2 = subgroup_generated(group, [lab["y^2"]])
y = subgroup_generated(group, [lab["y"]])
xy2 = subgroup_generated(group, [lab["x*y^2"]])
x_y2 = subgroup_generated(group, [lab["x"], lab["y^2"]])

print()
restricted = restrict(sct, y2)
print("restricted to <y^2>:", [sorted(p) for p in restricted.theory.parts])

deflated = deflate(sct, y)
print("deflated by <y>:", [sorted(p) for p in deflated.theory.parts],
      f"(quotient order {deflated.group.order})")

sub = subquotient(sct, xy2, x_y2)
print("induced on <x,y^2>/<x*y^2>:", [sorted(p) for p in sub.theory.parts],
      "— computed along both routes and compared")

print()
star = star_of_restriction_deflation(sct, y)
print(f"star product at <y>: {star.num_parts} parts; "
      f"the original theory refines it: {refines(sct, star)}")
