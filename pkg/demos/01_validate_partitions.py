"""Validating superclass partitions.

A partition of a finite group is a system of superclasses when {1} is a
part, every part is a union of conjugacy classes, and the products of part
sums stay in the integer span of the part sums.  This script validates the
bundled 9-part partition of C3 x C6 and then shows what the validator
reports for broken inputs.
"""

import json

from superchar import verify_sct, validated_sct
from superchar.corpus import corpus_group, nine_part_partition_path
from superchar.io import parse_partition

group = corpus_group("c3xc6")
with open(nine_part_partition_path(), "r", encoding="utf-8") as fh:
    parts = parse_partition(json.load(fh), group)

report = verify_sct(group, parts)
print(f"C3 x C6, 9-part partition: valid = {report.valid}")
sct = validated_sct(group, parts, name="c3xc6-nine")
for part in sct.parts:
    print("   {" + ", ".join(group.label_of(g) for g in sorted(part)) + "}")

print()
print("Now some broken inputs on C4 = <x>:")
c4 = corpus_group("c4")

candidates = {
    "splitting x from its inverse x^3": [[0], [1, 2], [3]],
    "no singleton {1}": [[0, 2], [1, 3]],
    "not a partition (3 missing)": [[0], [1, 2]],
}
for title, parts in candidates.items():
    report = verify_sct(c4, parts)
    kinds = ", ".join(sorted(report.kinds()))
    print(f"  {title}: valid = {report.valid} ({kinds})")

# the closure failure above comes with the offending coefficient vector:
failure = verify_sct(c4, [[0], [1, 2], [3]]).failures[0]
print(f"  witness coefficients of the failing product: {list(failure.coeffs)}")
