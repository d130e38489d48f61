"""Enumerating every superclass partition of small groups.

The search coarsens the conjugacy-class partition, pruning any prefix whose
completed parts already violate closure.  The finest partition (conjugacy
classes) and the coarsest one ({1} against everything else) always appear.
"""

from superchar import enumerate_scts, refines, finest_sct, coarsest_sct
from superchar.corpus import corpus_group

for name in ["c3", "c4", "c6", "s3", "d4", "q8", "a4", "c12", "d8"]:
    group = corpus_group(name)
    theories = enumerate_scts(group)
    print(f"{name}: order {group.order}, {len(group.conjugacy_classes)} classes, "
          f"{len(theories)} supercharacter theories")

print()
group = corpus_group("d4")
print("All theories of D4, as partitions of {0..7}:")
for sct in enumerate_scts(group):
    rendered = " | ".join(
        "{" + ",".join(str(g) for g in sorted(part)) + "}" for part in sct.parts
    )
    print(f"  {rendered}")

print()
print("Refinement order between the first few theories of D4:")
theories = enumerate_scts(group)
fine = finest_sct(group)
coarse = coarsest_sct(group)
for sct in theories:
    print(f"  finest <= {sct.num_parts:2d} parts <= coarsest : "
          f"{refines(fine, sct)} / {refines(sct, coarse)}")
