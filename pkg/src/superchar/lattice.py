"""Supernormal subgroups, their lattice, induced theories and star products.

A subgroup is supernormal for a superclass partition when it is a union of
parts.  Such subgroups always form a modular lattice under intersection and
subgroup product; the lattice constructor asserts both closure properties
and the modular law rather than trusting them.

Induced theories on a subquotient N/H are computed along both routes
(restrict-then-deflate and deflate-then-restrict) and compared part for
part; a mismatch is an internal error, never a user error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import (
    CompatibilityViolationError,
    NotConjugationInvariantError,
    NotNormalError,
    NotSubgroupError,
    NotSupernormalError,
    ParentMismatchError,
)
from .groups import (
    FiniteGroup,
    Homomorphism,
    is_normal,
    is_subgroup,
    product_subgroup,
    quotient,
    subgroup_group,
)
from .schur import SuperclassPartition, validated_sct


def is_supernormal(sct: SuperclassPartition, subset: frozenset[int]) -> bool:
    """True iff the subset is a subgroup and a union of parts."""
    if not is_subgroup(sct.parent, subset):
        return False
    ids = {int(sct.part_ids[g]) for g in subset}
    return all(sct.parts[i] <= subset for i in ids)


def _inverse_part_ids(sct: SuperclassPartition) -> list[int]:
    group = sct.parent
    out = []
    for part in sct.parts:
        images = {int(sct.part_ids[group.inv[g]]) for g in part}
        assert len(images) == 1, "setwise inverse of a part must be a part"
        out.append(images.pop())
    return out


def supernormal_subgroups(sct: SuperclassPartition) -> list[frozenset[int]]:
    """All unions of parts that form subgroups, by include/exclude search.

    Pruning: products of included parts force the parts they hit (a part
    touched by the running product set can no longer be excluded); a part's
    setwise inverse may not be excluded when the part is included; candidate
    sizes must stay completable to a divisor of the group order.
    """
    group = sct.parent
    parts = sct.parts
    p = len(parts)
    part_ids = sct.part_ids
    inv_part = _inverse_part_ids(sct)
    part_arrays = [np.fromiter(sorted(part), dtype=np.int64) for part in parts]
    sizes = [len(part) for part in parts]
    divisors = sorted(d for d in range(1, group.order + 1) if group.order % d == 0)
    suffix_sizes = [0] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix_sizes[i] = suffix_sizes[i + 1] + sizes[i]
    results: list[frozenset[int]] = []

    def completable(size: int, i: int) -> bool:
        limit = size + suffix_sizes[i]
        return any(size <= d <= limit for d in divisors)

    def dfs(i: int, included: tuple[int, ...], union: np.ndarray, forced: frozenset[int]) -> None:
        if i == p:
            members = frozenset(int(g) for g in union)
            assert is_subgroup(group, members)
            results.append(members)
            return
        if not completable(len(union), i):
            return
        # exclude part i unless products of included parts already hit it
        if i not in forced:
            dfs(i + 1, included, union, forced)
        # include part i
        if inv_part[i] < i and inv_part[i] not in included:
            return
        pa = part_arrays[i]
        prods = np.unique(
            np.concatenate(
                [
                    group.mul[np.ix_(union, pa)].ravel(),
                    group.mul[np.ix_(pa, union)].ravel(),
                    group.mul[np.ix_(pa, pa)].ravel(),
                ]
            )
        )
        hit = {int(part_ids[e]) for e in prods}
        new_forced = set(forced) - {i}
        for h in hit:
            if h < i or h == i:
                if h != i and h not in included:
                    return  # product lands in an excluded part
            else:
                new_forced.add(h)
        if inv_part[i] > i:
            new_forced.add(inv_part[i])
        dfs(
            i + 1,
            included + (i,),
            np.concatenate([union, pa]),
            frozenset(new_forced),
        )

    dfs(1, (0,), part_arrays[0].copy(), frozenset())
    return sorted(results, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class NormLattice:
    """The lattice of supernormal subgroups with meet/join/cover tables."""

    partition: SuperclassPartition
    nodes: tuple[frozenset[int], ...]
    leq: np.ndarray          # leq[i, j] iff nodes[i] <= nodes[j]
    meet: np.ndarray
    join: np.ndarray
    hasse_edges: tuple[tuple[int, int], ...]  # (lower, upper) covering pairs

    def index_of(self, subset: frozenset[int]) -> int:
        return self.nodes.index(subset)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def covers_of(self, i: int) -> list[int]:
        """Nodes covered by node i (the maximal proper subnodes)."""
        return [a for (a, b) in self.hasse_edges if b == i]


def norm_lattice(sct: SuperclassPartition) -> NormLattice:
    """Build the supernormal lattice; closure and modularity are asserted."""
    group = sct.parent
    nodes = tuple(supernormal_subgroups(sct))
    k = len(nodes)
    index = {node: i for i, node in enumerate(nodes)}
    assert frozenset({0}) in index and frozenset(range(group.order)) in index
    leq = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            leq[i, j] = a <= b
    meet = np.zeros((k, k), dtype=np.int64)
    join = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            inter = a & b
            if inter not in index:
                raise AssertionError("lattice not closed under intersection")
            meet[i, j] = index[inter]
            prod = product_subgroup(group, a, b)
            if prod not in index:
                raise AssertionError("lattice not closed under subgroup product")
            join[i, j] = index[prod]
    for a in range(k):
        for c in range(k):
            if not leq[a, c]:
                continue
            for b in range(k):
                if join[a, meet[b, c]] != meet[join[a, b], c]:
                    raise AssertionError("modular law fails in the supernormal lattice")
    edges = []
    for i in range(k):
        for j in range(k):
            if i == j or not leq[i, j]:
                continue
            if any(leq[i, t] and leq[t, j] and t != i and t != j for t in range(k)):
                continue
            edges.append((i, j))
    leq.flags.writeable = False
    meet.flags.writeable = False
    join.flags.writeable = False
    return NormLattice(sct, nodes, leq, meet, join, tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# induced theories


@dataclass(frozen=True)
class InducedTheory:
    """A theory induced on a subquotient upper/lower of the base group.

    ``group`` is the subquotient as a group of its own; ``coset_members``
    maps each of its elements to the corresponding subset of base-group
    elements (a coset of ``lower`` inside ``upper``).  ``inclusion`` embeds
    the subgroup realization of ``upper`` into the base group and
    ``projection`` maps it onto ``group``.
    """

    base: SuperclassPartition
    lower: frozenset[int]
    upper: frozenset[int]
    group: FiniteGroup
    theory: SuperclassPartition
    coset_members: tuple[frozenset[int], ...]
    inclusion: Homomorphism
    projection: Homomorphism

    def flat_parts(self) -> frozenset[frozenset[int]]:
        """Parts expressed as unions of base-group elements."""
        out = []
        for part in self.theory.parts:
            members: set[int] = set()
            for e in part:
                members |= self.coset_members[e]
            out.append(frozenset(members))
        return frozenset(out)


def _require_supernormal(sct: SuperclassPartition, subset: frozenset[int], tag: str) -> None:
    if not is_supernormal(sct, subset):
        raise NotSupernormalError(f"{tag} is not a union of parts forming a subgroup")


def restrict(sct: SuperclassPartition, normal: frozenset[int]) -> InducedTheory:
    """The induced theory on a supernormal subgroup: the parts inside it.

    Results are cached; everything returned is immutable and shared.
    """
    return _restrict_cached(sct, normal)


@lru_cache(maxsize=16384)
def _restrict_cached(sct: SuperclassPartition, normal: frozenset[int]) -> InducedTheory:
    _require_supernormal(sct, normal, "N")
    group = sct.parent
    sub, inclusion = subgroup_group(group, normal)
    pos = {int(inclusion.map[i]): i for i in range(sub.order)}
    inner_parts = [
        sorted(pos[g] for g in part) for part in sct.parts if part <= normal
    ]
    theory = validated_sct(sub, inner_parts, name=_derived_name(sct, "restricted"))
    members = tuple(frozenset({int(inclusion.map[i])}) for i in range(sub.order))
    return InducedTheory(
        base=sct,
        lower=frozenset({0}),
        upper=normal,
        group=sub,
        theory=theory,
        coset_members=members,
        inclusion=inclusion,
        projection=Homomorphism.identity(sub),
    )


def deflate(sct: SuperclassPartition, normal: frozenset[int]) -> InducedTheory:
    """The induced theory on the quotient: images of parts, duplicates merged.

    Results are cached; everything returned is immutable and shared.
    """
    return _deflate_cached(sct, normal)


@lru_cache(maxsize=16384)
def _deflate_cached(sct: SuperclassPartition, normal: frozenset[int]) -> InducedTheory:
    _require_supernormal(sct, normal, "N")
    group = sct.parent
    qgroup, projection = quotient(group, normal)
    images = {projection.image_of_set(part) for part in sct.parts}
    theory = validated_sct(
        qgroup, [sorted(img) for img in images], name=_derived_name(sct, "deflated")
    )
    members = tuple(projection.preimage_of(q) for q in range(qgroup.order))
    return InducedTheory(
        base=sct,
        lower=normal,
        upper=frozenset(range(group.order)),
        group=qgroup,
        theory=theory,
        coset_members=members,
        inclusion=Homomorphism.identity(group),
        projection=projection,
    )


def _derived_name(sct: SuperclassPartition, op: str) -> Optional[str]:
    return f"{sct.name}:{op}" if sct.name else None


def subquotient(
    sct: SuperclassPartition, lower: frozenset[int], upper: frozenset[int]
) -> InducedTheory:
    """The induced theory on upper/lower, computed along both routes.

    Restrict-then-deflate is returned; deflate-then-restrict is computed as
    well and the two partitions are compared part for part (as unions of
    base-group elements).  Disagreement raises CompatibilityViolationError
    and indicates a bug, not bad input.  Results are cached.
    """
    return _subquotient_cached(sct, lower, upper)


@lru_cache(maxsize=16384)
def _subquotient_cached(
    sct: SuperclassPartition, lower: frozenset[int], upper: frozenset[int]
) -> InducedTheory:
    _require_supernormal(sct, upper, "N")
    _require_supernormal(sct, lower, "H")
    if not lower <= upper:
        raise NotSupernormalError("H must be contained in N")

    # route 1: restrict to upper, then deflate by lower
    restricted = restrict(sct, upper)
    pos = {int(restricted.inclusion.map[i]): i for i in range(restricted.group.order)}
    lower_in_sub = frozenset(pos[g] for g in lower)
    inner = deflate(restricted.theory, lower_in_sub)
    members = tuple(
        frozenset(int(restricted.inclusion.map[s]) for s in inner.coset_members[q])
        for q in range(inner.group.order)
    )
    route1 = InducedTheory(
        base=sct,
        lower=lower,
        upper=upper,
        group=inner.group,
        theory=inner.theory,
        coset_members=members,
        inclusion=restricted.inclusion,
        projection=inner.projection,
    )

    # route 2: deflate by lower, then restrict to upper/lower
    deflated = deflate(sct, lower)
    upper_in_quot = deflated.projection.image_of_set(upper)
    outer = restrict(deflated.theory, upper_in_quot)
    flat2 = []
    for part in outer.theory.parts:
        members2: set[int] = set()
        for e in part:
            q = int(outer.inclusion.map[e])
            members2 |= deflated.coset_members[q]
        flat2.append(frozenset(members2))
    if route1.flat_parts() != frozenset(flat2):
        raise CompatibilityViolationError(
            "restrict-then-deflate and deflate-then-restrict disagree"
        )
    return route1


def star_product(
    group: FiniteGroup,
    normal: frozenset[int],
    inner: SuperclassPartition,
    quotient_sct: SuperclassPartition,
) -> SuperclassPartition:
    """Assemble a theory of the whole group from theories of N and G/N.

    ``inner`` must live on the subgroup realization of N (see
    ``subgroup_group``) and have conjugation-stable parts; ``quotient_sct``
    must live on the quotient group of N.  The parts of the result are the
    inner parts plus the preimages of the non-identity quotient parts.
    """
    if not is_subgroup(group, normal):
        raise NotSubgroupError("N is not a subgroup")
    if not is_normal(group, normal):
        raise NotNormalError("N is not normal")
    sub, inclusion = subgroup_group(group, normal)
    if inner.parent != sub:
        raise ParentMismatchError("inner theory does not live on the subgroup realization of N")
    qgroup, projection = quotient(group, normal)
    if quotient_sct.parent != qgroup:
        raise ParentMismatchError("quotient theory does not live on G/N")
    inv = group.inv
    mul = group.mul
    lifted_parts = [inclusion.image_of_set(part) for part in inner.parts]
    for part in lifted_parts:
        pa = np.fromiter(part, dtype=np.int64)
        for g in range(group.order):
            conj = frozenset(int(v) for v in mul[mul[g, pa], inv[g]])
            if conj != part:
                raise NotConjugationInvariantError(
                    "inner parts are not stable under conjugation by the big group"
                )
    parts: list[frozenset[int]] = list(lifted_parts)
    for part in quotient_sct.parts:
        if part == frozenset({0}):
            continue  # the identity-coset part pulls back into N, already covered
        parts.append(projection.preimage_of_set(part))
    name = None
    if inner.name and quotient_sct.name:
        name = f"{inner.name}*{quotient_sct.name}"
    return validated_sct(group, [sorted(p) for p in parts], name=name)


def star_of_restriction_deflation(
    sct: SuperclassPartition, normal: frozenset[int]
) -> SuperclassPartition:
    """star_product of the restriction and deflation of one theory at N.

    The original theory always refines the result: every part of the star
    product is a union of original parts.  The converse fails in general
    (the star product forgets how the theory mixes N with its cosets).
    """
    inner = restrict(sct, normal)
    outer = deflate(sct, normal)
    return star_product(sct.parent, normal, inner.theory, outer.theory)
