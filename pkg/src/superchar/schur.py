"""Superclass partitions: the central Schur-ring validity criterion and search.

A partition of a finite group is a valid system of superclasses exactly
when (i) it is a partition, (ii) {1} is a part, (iii) every part is a union
of conjugacy classes, and (iv) the product of any two part sums lies in the
integer span of the part sums.  All four checks are exact.

The enumerator searches coarsenings of the conjugacy-class partition.
Since part sums of unions of classes are central, products of part sums are
constant on conjugacy classes, so the whole search runs on class-level
structure constants instead of raw elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ParentMismatchError, SearchSpaceTooLargeError
from .groups import FiniteGroup, canonical_partition

MAX_ENUM_CLASSES = 14
MAX_ENUM_ORDER = 64

NOT_A_PARTITION = "NotAPartition"
MISSING_IDENTITY_SINGLETON = "MissingIdentitySingleton"
NOT_UNION_OF_CLASSES = "NotUnionOfClasses"
CLOSURE_VIOLATION = "ClosureViolation"


@dataclass(frozen=True)
class ValidityFailure:
    """One reason a candidate partition is not a valid superclass system."""

    kind: str
    parts: tuple[int, ...] = ()
    elements: tuple[int, ...] = ()
    coeffs: Optional[tuple[int, ...]] = None
    detail: str = ""


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    failures: tuple[ValidityFailure, ...] = ()

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}


class SuperclassPartition:
    """A validated partition of a group into superclasses."""

    def __init__(
        self,
        parent: FiniteGroup,
        parts: Iterable[Iterable[int]],
        *,
        validated: bool = False,
        name: Optional[str] = None,
    ) -> None:
        self.parent = parent
        self.parts = canonical_partition(parts)
        self.validated = validated
        self.name = name

    @cached_property
    def part_ids(self) -> np.ndarray:
        ids = np.full(self.parent.order, -1, dtype=np.int64)
        for i, part in enumerate(self.parts):
            for g in part:
                ids[g] = i
        ids.flags.writeable = False
        return ids

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def part_of(self, g: int) -> frozenset[int]:
        return self.parts[int(self.part_ids[g])]

    def key(self) -> tuple[tuple[int, ...], ...]:
        """Hashable canonical form: sorted tuples in canonical part order."""
        return tuple(tuple(sorted(p)) for p in self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperclassPartition):
            return NotImplemented
        return self.parent == other.parent and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.parent, self.parts))

    def __repr__(self) -> str:
        tag = self.name or "sct"
        return f"SuperclassPartition({tag!r}, parts={self.num_parts}, order={self.parent.order})"


def finest_sct(group: FiniteGroup) -> SuperclassPartition:
    """The conjugacy-class partition (always valid)."""
    return SuperclassPartition(group, group.conjugacy_classes, validated=True, name="finest")


def coarsest_sct(group: FiniteGroup) -> SuperclassPartition:
    """{1} together with everything else (always valid; equals finest for |G| <= 2)."""
    parts = [{0}]
    if group.order > 1:
        parts.append(set(range(1, group.order)))
    return SuperclassPartition(group, parts, validated=True, name="coarsest")


def refines(a: SuperclassPartition, b: SuperclassPartition) -> bool:
    """True iff every part of a is contained in some part of b."""
    if a.parent != b.parent:
        raise ParentMismatchError("partitions live over different groups")
    bid = b.part_ids
    return all(len({int(bid[g]) for g in part}) == 1 for part in a.parts)


# ---------------------------------------------------------------------------
# validity


def verify_sct(group: FiniteGroup, parts: Iterable[Iterable[int]]) -> ValidityReport:
    """Run the full validity criterion; failures are data, not exceptions.

    All failures are reported.  The closure check is only meaningful over a
    partition, so it is skipped when the part system fails to partition the
    group.
    """
    part_list = [sorted({int(g) for g in p}) for p in parts]
    failures: list[ValidityFailure] = []

    n = group.order
    seen = np.zeros(n, dtype=np.int64)
    bad_element = False
    for p in part_list:
        if not p:
            failures.append(ValidityFailure(NOT_A_PARTITION, detail="empty part"))
            continue
        for g in p:
            if g < 0 or g >= n:
                bad_element = True
                failures.append(
                    ValidityFailure(NOT_A_PARTITION, elements=(g,), detail="element out of range")
                )
            else:
                seen[g] += 1
    if not bad_element:
        dup = np.nonzero(seen > 1)[0]
        missing = np.nonzero(seen == 0)[0]
        if dup.size:
            failures.append(
                ValidityFailure(NOT_A_PARTITION, elements=tuple(int(x) for x in dup), detail="covered twice")
            )
        if missing.size:
            failures.append(
                ValidityFailure(NOT_A_PARTITION, elements=tuple(int(x) for x in missing), detail="not covered")
            )
    is_partition = not failures

    if [0] not in part_list:
        failures.append(ValidityFailure(MISSING_IDENTITY_SINGLETON, detail="{1} is not a part"))

    cls_ids = group.class_ids
    classes = group.conjugacy_classes
    for i, p in enumerate(part_list):
        good = all(g >= 0 and g < n for g in p) and p
        if not good:
            continue
        union_ok = all(classes[int(cls_ids[g])] <= set(p) for g in p)
        if not union_ok:
            failures.append(ValidityFailure(NOT_UNION_OF_CLASSES, parts=(i,)))

    if is_partition:
        part_ids = np.full(n, -1, dtype=np.int64)
        for i, p in enumerate(part_list):
            part_ids[p] = i
        idx = [np.fromiter(p, dtype=np.int64) for p in part_list]
        for i, pi in enumerate(idx):
            rows = group.mul[pi]
            for j, pj in enumerate(idx):
                vec = np.bincount(rows[:, pj].ravel(), minlength=n)
                for k, pk in enumerate(idx):
                    vals = vec[pk]
                    if vals.min() != vals.max():
                        failures.append(
                            ValidityFailure(
                                CLOSURE_VIOLATION,
                                parts=(i, j),
                                elements=(k,),
                                coeffs=tuple(int(v) for v in vec),
                                detail="product not constant on part",
                            )
                        )
                        break  # first offending part per product is enough

    return ValidityReport(valid=not failures, failures=tuple(failures))


def validated_sct(
    group: FiniteGroup, parts: Iterable[Iterable[int]], *, name: Optional[str] = None
) -> SuperclassPartition:
    """Verify and wrap a partition, raising ValueError when it is invalid."""
    part_list = [list(p) for p in parts]
    report = verify_sct(group, part_list)
    if not report.valid:
        kinds = ", ".join(sorted(report.kinds()))
        raise ValueError(f"not a valid superclass partition: {kinds}")
    return SuperclassPartition(group, part_list, validated=True, name=name)


# ---------------------------------------------------------------------------
# class-level structure constants


def class_structure_tensor(group: FiniteGroup) -> np.ndarray:
    """T[a, b, c]: coefficient of each element of class c in (class-sum a)(class-sum b).

    Products of class sums are central, hence constant on conjugacy classes,
    so one representative per class carries the whole coefficient vector.
    """
    classes = group.conjugacy_classes
    m = len(classes)
    n = group.order
    cls_ids = group.class_ids
    reps = np.array([min(c) for c in classes], dtype=np.int64)
    tensor = np.zeros((m, m, m), dtype=np.int64)
    all_elems = np.arange(n)
    for a, ca in enumerate(classes):
        ai = np.fromiter(ca, dtype=np.int64)
        prods = group.mul[ai]  # |ca| x n
        flat = cls_ids[all_elems] * np.int64(n)  # class of the right factor
        # counts[b, e] = #{(g, h) : g in class a, h in class b, gh = e}
        keys = (flat[None, :] + prods).ravel()
        counts = np.bincount(keys, minlength=m * n).reshape(m, n)
        tensor[a] = counts[:, reps]
    return tensor


# ---------------------------------------------------------------------------
# exhaustive enumeration


def enumerate_scts(
    group: FiniteGroup,
    *,
    max_classes: int = MAX_ENUM_CLASSES,
    max_order: int = MAX_ENUM_ORDER,
) -> list[SuperclassPartition]:
    """All superclass partitions of the group, canonically sorted.

    The search coarsens the conjugacy-class partition part by part: the
    least unassigned class seeds a part, extensions are limited to classes
    whose completed-product coefficients match the seed, and a completed
    part is rejected as soon as some product with a completed part fails to
    be constant on a completed part.  Completing a part forces its setwise
    inverse to be completed in the same step.  Every survivor is re-checked
    with the element-level criterion before it is returned.
    """
    classes = group.conjugacy_classes
    m = len(classes)
    if m > max_classes:
        raise SearchSpaceTooLargeError(
            f"{m} conjugacy classes exceed the enumeration guard ({max_classes})"
        )
    if group.order > max_order:
        raise SearchSpaceTooLargeError(
            f"group order {group.order} exceeds the enumeration guard ({max_order})"
        )
    tensor = class_structure_tensor(group)
    inv_class = [int(group.class_ids[group.inv[min(c)]]) for c in classes]

    results: list[tuple[tuple[int, ...], ...]] = []
    completed: list[tuple[int, ...]] = [(0,)]
    # pair_products[(i, j)] = coefficient vector (indexed by class) of part_i * part_j
    pair_products: dict[tuple[int, int], np.ndarray] = {
        (0, 0): tensor[0, 0].copy()
    }
    assigned = [False] * m
    assigned[0] = True

    def block_sum(bi: Sequence[int], bj: Sequence[int]) -> np.ndarray:
        total = np.zeros(m, dtype=np.int64)
        for a in bi:
            for b in bj:
                total += tensor[a, b]
        return total

    def constant_on(vec: np.ndarray, block: Sequence[int]) -> bool:
        first = vec[block[0]]
        return all(vec[c] == first for c in block[1:])

    def try_close(block: tuple[int, ...]) -> Optional[dict[tuple[int, int], np.ndarray]]:
        """Check all products involving the new block; return its pair products."""
        t = len(completed)
        new_pairs: dict[tuple[int, int], np.ndarray] = {}
        blocks = completed + [block]
        for i, other in enumerate(completed):
            new_pairs[(i, t)] = block_sum(other, block)
            new_pairs[(t, i)] = block_sum(block, other)
        new_pairs[(t, t)] = block_sum(block, block)
        for vec in new_pairs.values():
            for b in blocks:
                if not constant_on(vec, b):
                    return None
        for (i, j), vec in pair_products.items():
            if not constant_on(vec, block):
                return None
        return new_pairs

    def push(block: tuple[int, ...], new_pairs: dict[tuple[int, int], np.ndarray]) -> None:
        completed.append(block)
        pair_products.update(new_pairs)
        for c in block:
            assigned[c] = True

    def pop(block: tuple[int, ...], new_pairs: dict[tuple[int, int], np.ndarray]) -> None:
        completed.pop()
        for key in new_pairs:
            del pair_products[key]
        for c in block:
            assigned[c] = False

    def dfs() -> None:
        unassigned = [c for c in range(1, m) if not assigned[c]]
        if not unassigned:
            results.append(tuple(completed))
            return
        seed = unassigned[0]

        def signature_matches(c: int) -> bool:
            return all(vec[c] == vec[seed] for vec in pair_products.values())

        eligible = [c for c in unassigned[1:] if signature_matches(c)]

        def close_and_recurse(block: tuple[int, ...]) -> None:
            twin = tuple(sorted(inv_class[c] for c in block))
            if twin != block:
                overlap = set(twin) & set(block)
                if overlap:
                    return
                if any(assigned[c] for c in twin):
                    return
            pairs = try_close(block)
            if pairs is None:
                return
            push(block, pairs)
            if twin != block:
                twin_pairs = try_close(twin)
                if twin_pairs is None:
                    pop(block, pairs)
                    return
                push(twin, twin_pairs)
                dfs()
                pop(twin, twin_pairs)
            else:
                dfs()
            pop(block, pairs)

        def grow(block: tuple[int, ...], pool: list[int]) -> None:
            close_and_recurse(block)
            for k, c in enumerate(pool):
                grow(block + (c,), pool[k + 1 :])

        grow((seed,), eligible)

    dfs()

    seen: set[tuple[tuple[int, ...], ...]] = set()
    out: list[SuperclassPartition] = []
    for blocks in results:
        parts = [sorted(g for c in block for g in classes[c]) for block in blocks]
        sct = SuperclassPartition(group, parts)
        if sct.key() in seen:
            continue
        seen.add(sct.key())
        report = verify_sct(group, parts)
        assert report.valid, "enumerator produced an invalid partition"
        out.append(SuperclassPartition(group, parts, validated=True))
    out.sort(key=lambda s: (s.num_parts, s.key()))
    return out
