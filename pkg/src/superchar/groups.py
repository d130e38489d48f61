"""Finite groups as validated multiplication tables.

Elements of a group of order n are the integers 0..n-1 with the identity
always at index 0.  Subgroups are plain ``frozenset[int]`` over those
indices.  All objects are immutable after construction and every operation
is a pure function.
"""

from __future__ import annotations

import hashlib
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    NoIdentityError,
    NotAssociativeError,
    NotIsomorphismError,
    NotLatinSquareError,
    NotNormalError,
    NotSubgroupError,
    OrderLimitExceededError,
    ProductNotSubgroupError,
)

ORDER_LIMIT = 512
_ASSOC_EXHAUSTIVE_LIMIT = 64
_ASSOC_SAMPLES = 100_000


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Attributes:
        order: number of elements n.
        mul: n x n int array, ``mul[a, b]`` is the product ab.
        inv: length-n int array of inverses.
        labels: optional per-element display strings.
        name: optional group name.
    """

    def __init__(
        self,
        mul: np.ndarray,
        *,
        name: Optional[str] = None,
        labels: Optional[Sequence[str]] = None,
        _validated: bool = False,
    ) -> None:
        mul = np.asarray(mul, dtype=np.int64)
        self.order = int(mul.shape[0])
        self.name = name
        self.labels = tuple(str(s) for s in labels) if labels is not None else None
        if not _validated:
            mul = _validate_table(mul)
        mul.flags.writeable = False
        self.mul = mul
        inv = np.argmax(mul == 0, axis=1).astype(np.int64)
        if not np.all(mul[inv, np.arange(self.order)] == 0):
            raise NotLatinSquareError("left and right inverses disagree")
        inv.flags.writeable = False
        self.inv = inv
        if self.labels is not None and len(self.labels) != self.order:
            raise ValueError("labels length does not match group order")

    # -- identity / hashing: structural on the table, labels ignored --

    @cached_property
    def _digest(self) -> bytes:
        return hashlib.sha256(self.mul.tobytes()).digest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and self._digest == other._digest

    def __hash__(self) -> int:
        return hash(self._digest)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label!r}, order={self.order})"

    # -- cached structure --

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            orders[g] = k
        orders.flags.writeable = False
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def class_ids(self) -> np.ndarray:
        """Conjugacy class index of each element (classes in canonical order)."""
        ids = np.full(self.order, -1, dtype=np.int64)
        for idx, cls in enumerate(self.conjugacy_classes):
            for g in cls:
                ids[g] = idx
        ids.flags.writeable = False
        return ids

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset[int], ...]:
        """Orbits of conjugation, sorted by (size, smallest element)."""
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        xs = np.arange(self.order)
        for g in range(self.order):
            if seen[g]:
                continue
            orbit = np.unique(self.mul[self.mul[xs, g], self.inv[xs]])
            seen[orbit] = True
            classes.append(frozenset(int(v) for v in orbit))
        return canonical_partition(classes)

    def label_of(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    def elements(self) -> range:
        return range(self.order)


def canonical_partition(parts: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    """Sort parts by (size, smallest element); the canonical form used everywhere."""
    fs = [frozenset(int(x) for x in p) for p in parts]
    return tuple(sorted(fs, key=lambda p: (len(p), min(p))))


def conjugacy_classes_of(group: FiniteGroup) -> tuple[frozenset[int], ...]:
    """The conjugacy classes of a group, in canonical order."""
    return group.conjugacy_classes


def _validate_table(mul: np.ndarray) -> np.ndarray:
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise NotLatinSquareError("multiplication table must be square")
    n = mul.shape[0]
    if n == 0:
        raise NoIdentityError("empty table has no identity")
    if n > ORDER_LIMIT:
        raise OrderLimitExceededError(f"order {n} exceeds supported limit {ORDER_LIMIT}")
    if mul.min() < 0 or mul.max() >= n:
        raise NotLatinSquareError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(np.sort(mul, axis=1), np.tile(ar, (n, 1)))
            and np.array_equal(np.sort(mul, axis=0), np.tile(ar[:, None], (1, n)))):
        raise NotLatinSquareError("some row or column is not a permutation")
    # locate the two-sided identity and normalize it to index 0
    identity = -1
    for e in range(n):
        if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar):
            identity = e
            break
    if identity < 0:
        raise NoIdentityError("no two-sided identity element")
    if identity != 0:
        perm = ar.copy()
        perm[identity], perm[0] = 0, identity
        mul = _apply_relabel(mul, perm)
    _check_associativity(mul)
    return np.ascontiguousarray(mul)


def _apply_relabel(mul: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Relabel elements: new index of g is perm[g]."""
    inv_perm = np.empty_like(perm)
    inv_perm[perm] = np.arange(len(perm))
    return perm[mul[np.ix_(inv_perm, inv_perm)]]


def _check_associativity(mul: np.ndarray) -> None:
    n = mul.shape[0]
    if n <= _ASSOC_EXHAUSTIVE_LIMIT:
        # (ab)c as mul[mul][a,b,c]; a(bc) as mul[:, mul][a,b,c]
        if not np.array_equal(mul[mul], mul[:, mul]):
            raise NotAssociativeError("associativity fails (exhaustive check)")
        return
    rng = np.random.default_rng(0)
    a = rng.integers(0, n, _ASSOC_SAMPLES)
    b = rng.integers(0, n, _ASSOC_SAMPLES)
    c = rng.integers(0, n, _ASSOC_SAMPLES)
    if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
        raise NotAssociativeError("associativity fails (sampled check)")


# ---------------------------------------------------------------------------
# construction


def from_cayley_table(
    table: Sequence[Sequence[int]],
    *,
    name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """Build and validate a group from a full Cayley table."""
    return FiniteGroup(np.asarray(table, dtype=np.int64), name=name, labels=labels)


def from_permutation_generators(
    generators: Sequence[Sequence[int]],
    degree: Optional[int] = None,
    *,
    name: Optional[str] = None,
) -> FiniteGroup:
    """Close permutation generators under composition and return the group.

    Permutations are given as images of 0..m-1.  The element set is the
    subgroup of Sym(m) generated; elements are relabeled canonically
    (identity first, then by element order, then lexicographically by
    table row) so serialization is reproducible.
    """
    if degree is None:
        if not generators:
            raise ValueError("need a degree when no generators are given")
        degree = len(generators[0])
    gens = []
    for p in generators:
        perm = tuple(int(x) for x in p)
        if sorted(perm) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(perm)
    identity = tuple(range(degree))
    elems = [identity]
    index = {identity: 0}
    head = 0
    while head < len(elems):
        base = elems[head]
        head += 1
        for g in gens:
            prod = tuple(base[g[i]] for i in range(degree))
            if prod not in index:
                if len(elems) >= ORDER_LIMIT + 1:
                    raise OrderLimitExceededError(
                        f"generated group exceeds supported limit {ORDER_LIMIT}"
                    )
                index[prod] = len(elems)
                elems.append(prod)
    n = len(elems)
    if n > ORDER_LIMIT:
        raise OrderLimitExceededError(f"order {n} exceeds supported limit {ORDER_LIMIT}")
    mul = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mul[i, j] = index[tuple(p[q[k]] for k in range(degree))]
    group = FiniteGroup(mul, name=name)
    key = [(int(group.element_orders[g]), tuple(int(v) for v in mul[g])) for g in range(n)]
    order_by_key = sorted(range(n), key=lambda g: key[g])
    perm = np.empty(n, dtype=np.int64)
    perm[order_by_key] = np.arange(n)
    if np.all(perm == np.arange(n)):
        return group
    return FiniteGroup(_apply_relabel(mul, perm), name=name)


def relabeled(group: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """Return the group with element g renamed to perm[g]; perm[0] must be 0."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0:
        raise ValueError("relabeling must keep the identity at index 0")
    labels = None
    if group.labels is not None:
        labels = [""] * group.order
        for g in range(group.order):
            labels[int(perm[g])] = group.labels[g]
    return FiniteGroup(_apply_relabel(group.mul, perm), name=group.name, labels=labels)


def direct_product(a: FiniteGroup, b: FiniteGroup, *, name: Optional[str] = None) -> FiniteGroup:
    """Direct product with (x, y) encoded as x * |b| + y."""
    na, nb = a.order, b.order
    ia, ja = np.divmod(np.arange(na * nb), nb)
    mul = a.mul[np.ix_(ia, ia)] * nb + b.mul[np.ix_(ja, ja)]
    return FiniteGroup(mul, name=name or f"{a.name}x{b.name}")


# ---------------------------------------------------------------------------
# subgroup machinery


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    """Smallest subset containing the generators and 0, closed under mul and inv.

    Closure under products suffices: in a finite group every element's
    inverse is one of its powers.  Each pair of members is multiplied once
    (when the later of the two is dequeued the earlier is already present).
    """
    members = {0}
    queue = [0]
    for g in gens:
        g = int(g)
        if g not in members:
            members.add(g)
            queue.append(g)
    mul = group.mul
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in list(queue):
            for z in (int(mul[x, y]), int(mul[y, x])):
                if z not in members:
                    members.add(z)
                    queue.append(z)
    return frozenset(members)


def is_subgroup(group: FiniteGroup, subset: frozenset[int]) -> bool:
    if 0 not in subset or not subset <= set(range(group.order)):
        return False
    idx = np.fromiter(subset, dtype=np.int64)
    return bool(np.all(np.isin(group.mul[np.ix_(idx, idx)], idx)))


def is_normal(group: FiniteGroup, subset: frozenset[int]) -> bool:
    if not is_subgroup(group, subset):
        return False
    idx = np.fromiter(subset, dtype=np.int64)
    xs = np.arange(group.order)
    for h in idx:
        if not np.all(np.isin(group.mul[group.mul[xs, h], group.inv[xs]], idx)):
            return False
    return True


def intersect(h: frozenset[int], n: frozenset[int]) -> frozenset[int]:
    return h & n


def product_subgroup(
    group: FiniteGroup, h: frozenset[int], n: frozenset[int]
) -> frozenset[int]:
    """The subgroup HN = {hn}; raises if the product set fails to close."""
    for sub, tag in ((h, "H"), (n, "N")):
        if not is_subgroup(group, sub):
            raise NotSubgroupError(f"{tag} is not a subgroup")
    hi = np.fromiter(h, dtype=np.int64)
    ni = np.fromiter(n, dtype=np.int64)
    hn = frozenset(int(v) for v in np.unique(group.mul[np.ix_(hi, ni)]))
    if not is_subgroup(group, hn):
        raise ProductNotSubgroupError("HN is not closed (neither factor is normal)")
    return hn


def all_subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    """Every subgroup, found by closing extensions one generator at a time."""
    trivial = frozenset({0})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        sub = frontier.pop()
        for g in range(1, group.order):
            if g in sub:
                continue
            ext = subgroup_generated(group, sub | {g})
            if ext not in found:
                found.add(ext)
                frontier.append(ext)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def normal_subgroups(group: FiniteGroup) -> list[frozenset[int]]:
    return [s for s in all_subgroups(group) if is_normal(group, s)]


# ---------------------------------------------------------------------------
# homomorphisms


class Homomorphism:
    """A verified group homomorphism given by a per-element image table."""

    def __init__(
        self,
        source: FiniteGroup,
        target: FiniteGroup,
        mapping: Sequence[int],
        *,
        _validated: bool = False,
    ) -> None:
        self.source = source
        self.target = target
        m = np.asarray(mapping, dtype=np.int64)
        if m.shape != (source.order,):
            raise NotIsomorphismError("map length does not match source order")
        if not _validated:
            if m[0] != 0:
                raise NotIsomorphismError("map does not send identity to identity")
            if m.min() < 0 or m.max() >= target.order:
                raise NotIsomorphismError("map images out of range")
            if not np.array_equal(m[source.mul], target.mul[np.ix_(m, m)]):
                raise NotIsomorphismError("map is not multiplicative")
        m.flags.writeable = False
        self.map = m

    @cached_property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.map.tolist())) == self.source.order

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def image_of_set(self, subset: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.map[g]) for g in subset)

    def preimage_of(self, t: int) -> frozenset[int]:
        return frozenset(int(g) for g in np.nonzero(self.map == t)[0])

    def preimage_of_set(self, subset: Iterable[int]) -> frozenset[int]:
        want = set(int(t) for t in subset)
        return frozenset(g for g in range(self.source.order) if int(self.map[g]) in want)

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self after inner: source of inner -> target of self."""
        if inner.target is not self.source and inner.target != self.source:
            raise NotIsomorphismError("composition endpoints do not match")
        return Homomorphism(inner.source, self.target, self.map[inner.map], _validated=True)

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective:
            raise NotIsomorphismError("only bijective maps can be inverted")
        inv = np.empty(self.source.order, dtype=np.int64)
        inv[self.map] = np.arange(self.source.order)
        return Homomorphism(self.target, self.source, inv, _validated=True)

    @staticmethod
    def identity(group: FiniteGroup) -> "Homomorphism":
        return Homomorphism(group, group, np.arange(group.order), _validated=True)

    def __repr__(self) -> str:
        return f"Homomorphism({self.source!r} -> {self.target!r})"


def subgroup_group(
    group: FiniteGroup, members: frozenset[int]
) -> tuple[FiniteGroup, Homomorphism]:
    """Realize a subgroup as its own group plus the inclusion map.

    Elements keep their parent order (identity first automatically).
    """
    if not is_subgroup(group, members):
        raise NotSubgroupError("element set is not a subgroup")
    elems = sorted(members)
    pos = {g: i for i, g in enumerate(elems)}
    k = len(elems)
    idx = np.fromiter(elems, dtype=np.int64)
    mul = np.empty((k, k), dtype=np.int64)
    prods = group.mul[np.ix_(idx, idx)]
    for i in range(k):
        for j in range(k):
            mul[i, j] = pos[int(prods[i, j])]
    labels = [group.label_of(g) for g in elems] if group.labels is not None else None
    sub = FiniteGroup(mul, name=None, labels=labels, _validated=True)
    inclusion = Homomorphism(sub, group, idx, _validated=True)
    return sub, inclusion


def quotient(group: FiniteGroup, normal: frozenset[int]) -> tuple[FiniteGroup, Homomorphism]:
    """The quotient G/N (N checked normal) and the projection G -> G/N.

    Cosets are ordered by their least member, so the identity coset is
    element 0.
    """
    if not is_subgroup(group, normal):
        raise NotSubgroupError("N is not a subgroup")
    if not is_normal(group, normal):
        raise NotNormalError("N is not normal")
    n_idx = np.fromiter(normal, dtype=np.int64)
    coset_rep = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in range(group.order):
        if coset_rep[g] >= 0:
            continue
        members = np.unique(group.mul[g, n_idx])
        coset_rep[members] = g
        reps.append(g)
    reps.sort()
    rep_pos = {r: i for i, r in enumerate(reps)}
    proj = np.fromiter((rep_pos[int(coset_rep[g])] for g in range(group.order)), dtype=np.int64)
    q = len(reps)
    mul = np.empty((q, q), dtype=np.int64)
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            mul[i, j] = proj[group.mul[r, s]]
    labels = None
    if group.labels is not None:
        labels = [f"{group.label_of(r)}N" for r in reps]
    qgroup = FiniteGroup(mul, name=None, labels=labels, _validated=True)
    projection = Homomorphism(group, qgroup, proj, _validated=True)
    return qgroup, projection


# ---------------------------------------------------------------------------
# isomorphism search


def _generating_sequence(group: FiniteGroup) -> list[int]:
    """Small generating set: greedily add the least element not yet generated."""
    gens: list[int] = []
    span = frozenset({0})
    while len(span) < group.order:
        g = min(x for x in range(group.order) if x not in span)
        gens.append(g)
        span = subgroup_generated(group, span | {g})
    return gens


def _derivation(group: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """BFS word derivation: entries (element, parent, generator) with element = parent * gen."""
    seen = {0}
    order = [(0, -1, -1)]
    frontier = [0]
    head = 0
    while head < len(frontier):
        x = frontier[head]
        head += 1
        for g in gens:
            y = int(group.mul[x, g])
            if y not in seen:
                seen.add(y)
                order.append((y, x, g))
                frontier.append(y)
    assert len(order) == group.order, "derivation requires a full generating set"
    return order


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[Homomorphism]:
    """Yield all isomorphisms G -> H by pruned generator-image backtracking.

    Generator images are restricted to elements of equal order; each prefix
    is additionally required to generate a subgroup of the same size as the
    corresponding prefix in the source.
    """
    if g.order != h.order:
        return
    if sorted(g.element_orders.tolist()) != sorted(h.element_orders.tolist()):
        return
    gens = _generating_sequence(g)
    derivation = _derivation(g, gens)
    prefix_sizes = []
    for k in range(len(gens)):
        prefix_sizes.append(len(subgroup_generated(g, gens[: k + 1])))
    by_order: dict[int, list[int]] = {}
    for x in range(h.order):
        by_order.setdefault(int(h.element_orders[x]), []).append(x)
    images = [0] * len(gens)

    def candidates(k: int) -> list[int]:
        return by_order.get(int(g.element_orders[gens[k]]), [])

    def extend(k: int, span: frozenset[int]) -> Iterator[Homomorphism]:
        if k == len(gens):
            phi = np.zeros(g.order, dtype=np.int64)
            gen_img = dict(zip(gens, images))
            ok = True
            for elem, parent, gen in derivation[1:]:
                phi[elem] = h.mul[phi[parent], gen_img[gen]]
            if len(set(phi.tolist())) != g.order:
                ok = False
            if ok and not np.array_equal(phi[g.mul], h.mul[np.ix_(phi, phi)]):
                ok = False
            if ok:
                yield Homomorphism(g, h, phi, _validated=True)
            return
        for cand in candidates(k):
            if cand in span:
                continue
            new_span = subgroup_generated(h, span | {cand})
            if len(new_span) != prefix_sizes[k]:
                continue
            images[k] = cand
            yield from extend(k + 1, new_span)

    if not gens:  # trivial group
        yield Homomorphism(g, h, [0], _validated=True)
        return
    yield from extend(0, frozenset({0}))


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Optional[Homomorphism]:
    """First isomorphism G -> H found, or None if the groups are not isomorphic."""
    return next(isomorphisms(g, h), None)
