"""The character-theoretic face: supercharacters, idempotents, kernels.

Irreducible characters come from class-matrix diagonalization.  For a valid
superclass partition, grouping the irreducibles by the eigenvalues of the
part sums produces exactly as many groups as there are parts; the resulting
supercharacters are constant on parts, their scaled conjugates are
orthogonal idempotents of the group algebra, and intersections of their
kernels recover the supernormal lattice exactly.
"""

import json

from superchar import (
    character_table,
    kernel_supernormality_crosscheck,
    norm_lattice,
    orthogonality_report,
    supercharacter_partition,
    validated_sct,
)
from superchar.corpus import corpus_group, nine_part_partition_path
from superchar.io import parse_partition

for name in ["s3", "q8", "a4"]:
    table = character_table(corpus_group(name))
    print(f"{name}: irreducible degrees {table.degrees}")

group = corpus_group("c3xc6")
with open(nine_part_partition_path(), "r", encoding="utf-8") as fh:
    sct = validated_sct(group, parse_partition(json.load(fh), group), name="c3xc6-nine")

data = supercharacter_partition(sct)
print()
print(f"9-part theory on C3 x C6: {len(data.x_partition)} supercharacters")
print(f"degrees sigma_X(1): {data.degrees} (sum = {sum(data.degrees)} = |G|)")

reps = [min(p) for p in sct.parts]
print("supercharacter values on superclass representatives (rounded):")
for x, sigma in zip(data.x_partition, data.sigma):
    row = ", ".join(f"{sigma.values[r]:.2f}" for r in reps)
    print(f"  X = {x}: {row}")

report = orthogonality_report(data)
print()
print(f"max |<sigma_X, sigma_Y>| for X != Y : {report.max_cross_inner:.2e}")
print(f"max idempotency defect             : {report.max_idempotency_defect:.2e}")
print(f"max constancy defect on parts      : {report.max_constancy_defect:.2e}")

check = kernel_supernormality_crosscheck(data)
nodes = norm_lattice(sct).nodes
print()
print(f"kernel intersections == supernormal lattice: {check.match} "
      f"({len(check.kernels)} subgroups, orders {sorted(len(k) for k in check.kernels)})")
