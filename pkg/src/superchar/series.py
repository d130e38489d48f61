"""Chief series of superclass partitions and Jordan-Holder witnesses.

A chief series is a maximal chain in the supernormal lattice; its factors
carry induced theories.  Two series of the same theory are matched factor
by factor in two independent ways:

* directly, by searching for a theory isomorphism between each pair of
  factors and extracting a perfect matching;
* constructively, following the butterfly refinement: two series that share
  an internal node split into a quotient problem and a subgroup problem,
  and two series that differ everywhere are bridged by intermediate series
  through pairwise intersections until only two-step "diamonds" remain,
  which the canonical map h(H^N) -> hN resolves.  The recursion into
  restricted and deflated theories plays the role of the textbook
  minimal-counterexample induction; every produced isomorphism is
  re-verified before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    NoMatchError,
    NotApplicableError,
    NotIsomorphismError,
    SeriesMismatchError,
    TheoremViolationError,
)
from .groups import FiniteGroup, Homomorphism, isomorphisms, product_subgroup
from .lattice import (
    InducedTheory,
    NormLattice,
    norm_lattice,
    restrict,
    deflate,
    subquotient,
    supernormal_subgroups,
)
from .schur import SuperclassPartition


# ---------------------------------------------------------------------------
# theory isomorphisms


@dataclass(frozen=True)
class SctIsomorphism:
    """A group isomorphism carrying one superclass partition onto another."""

    source: SuperclassPartition
    target: SuperclassPartition
    map: Homomorphism

    def verify(self) -> bool:
        return check_sct_iso(self.source, self.target, self.map)

    def inverse(self) -> "SctIsomorphism":
        return SctIsomorphism(self.target, self.source, self.map.inverse())


def check_sct_iso(
    source: SuperclassPartition, target: SuperclassPartition, phi: Homomorphism
) -> bool:
    """True iff phi is a bijective homomorphism sending parts onto parts."""
    if phi.source != source.parent or phi.target != target.parent:
        raise NotIsomorphismError("map endpoints do not match the theories")
    if not phi.is_bijective:
        raise NotIsomorphismError("map is not bijective")
    image = {phi.image_of_set(part) for part in source.parts}
    return image == set(target.parts)


def find_sct_iso(
    source: SuperclassPartition, target: SuperclassPartition
) -> Optional[SctIsomorphism]:
    """Search group isomorphisms for one carrying source onto target.

    The multiset of part sizes must match before any search is attempted.
    """
    if sorted(len(p) for p in source.parts) != sorted(len(p) for p in target.parts):
        return None
    for phi in isomorphisms(source.parent, target.parent):
        if check_sct_iso(source, target, phi):
            return SctIsomorphism(source, target, phi)
    return None


# ---------------------------------------------------------------------------
# simplicity and chief series


def is_simple(sct: SuperclassPartition) -> bool:
    """Only the trivial subgroup and the whole group are unions of parts."""
    if sct.parent.order == 1:
        return False
    return len(supernormal_subgroups(sct)) == 2


@dataclass(eq=False)
class ChiefSeries:
    """A maximal chain G = chain[0] > ... > chain[-1] = 1 with its factors."""

    base: SuperclassPartition
    chain: tuple[frozenset[int], ...]
    factors: tuple[InducedTheory, ...]

    @property
    def length(self) -> int:
        return len(self.chain)

    def chain_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(node)) for node in self.chain)

    def __repr__(self) -> str:
        sizes = " > ".join(str(len(node)) for node in self.chain)
        return f"ChiefSeries(orders {sizes})"


def make_chief_series(
    sct: SuperclassPartition,
    chain: Sequence[frozenset[int]],
    *,
    lattice: Optional[NormLattice] = None,
    check_simple: bool = True,
) -> ChiefSeries:
    """Attach factors to a chain, verifying it is a maximal supernormal chain."""
    lattice = lattice or norm_lattice(sct)
    nodes = [frozenset(node) for node in chain]
    if nodes[0] != frozenset(range(sct.parent.order)) or nodes[-1] != frozenset({0}):
        raise SeriesMismatchError("series must run from the whole group down to 1")
    try:
        idx = [lattice.index_of(node) for node in nodes]
    except ValueError:
        raise SeriesMismatchError("series contains a non-supernormal node") from None
    for a, b in zip(idx[1:], idx[:-1]):
        if (a, b) not in lattice.hasse_edges:
            raise SeriesMismatchError("series is not a maximal chain (non-covering step)")
    factors = tuple(subquotient(sct, nodes[k + 1], nodes[k]) for k in range(len(nodes) - 1))
    if check_simple:
        for factor in factors:
            if not is_simple(factor.theory):
                raise SeriesMismatchError("a factor theory is not simple")
    return ChiefSeries(sct, tuple(nodes), factors)


def all_chief_series(sct: SuperclassPartition) -> list[ChiefSeries]:
    """Every maximal chain of the supernormal lattice, factors attached.

    All chains are asserted to have equal length.
    """
    lattice = norm_lattice(sct)
    chains: list[list[int]] = []

    def descend(prefix: list[int]) -> None:
        node = prefix[-1]
        below = lattice.covers_of(node)
        if not below:
            chains.append(prefix)
            return
        for nxt in sorted(below):
            descend(prefix + [nxt])

    descend([lattice.top])
    series = [
        make_chief_series(sct, [lattice.nodes[i] for i in chain], lattice=lattice)
        for chain in chains
    ]
    lengths = {s.length for s in series}
    assert len(lengths) == 1, "maximal chains of a modular lattice must share a length"
    series.sort(key=lambda s: s.chain_key())
    return series


# ---------------------------------------------------------------------------
# the diamond witness


def _canonical_coset_map(
    src_group: FiniteGroup,
    src_members: Sequence[frozenset[int]],
    dst_group: FiniteGroup,
    dst_members: Sequence[frozenset[int]],
) -> Homomorphism:
    """Map cosets by containment of their member sets (h(H^N) -> hN and kin)."""
    mapping = np.full(src_group.order, -1, dtype=np.int64)
    for a in range(src_group.order):
        hits = [
            b
            for b in range(dst_group.order)
            if src_members[a] & dst_members[b]
        ]
        if len(hits) != 1 or not src_members[a] <= dst_members[hits[0]]:
            raise TheoremViolationError("canonical coset map is not well defined")
        mapping[a] = hits[0]
    try:
        return Homomorphism(src_group, dst_group, mapping)
    except NotIsomorphismError as exc:
        raise TheoremViolationError(f"canonical coset map fails: {exc}") from exc


def diamond_witness(
    sct: SuperclassPartition, h: frozenset[int], n: frozenset[int]
) -> SctIsomorphism:
    """The diamond isomorphism between the theories on H/(H^N) and HN/N.

    Both induced theories are constructed, the canonical map
    h(H^N) -> hN is built from coset membership, and the resulting theory
    isomorphism is verified.  Failure at any step raises
    TheoremViolationError and indicates a bug.
    """
    meet = h & n
    join = product_subgroup(sct.parent, h, n)
    left = subquotient(sct, meet, h)
    right = subquotient(sct, n, join)
    phi = _canonical_coset_map(left.group, left.coset_members, right.group, right.coset_members)
    if not phi.is_bijective:
        raise TheoremViolationError("canonical coset map is not bijective")
    if not check_sct_iso(left.theory, right.theory, phi):
        raise TheoremViolationError("canonical map does not carry parts onto parts")
    return SctIsomorphism(left.theory, right.theory, phi)


# ---------------------------------------------------------------------------
# matching two chief series


@dataclass(frozen=True)
class ChiefSeriesMatch:
    """Jordan-Holder witness: tau is 1-indexed over factors."""

    tau: tuple[int, ...]
    witnesses: tuple[SctIsomorphism, ...]


@dataclass(eq=False)
class ZassenhausChains:
    """The six bridging series built from B3 = N2 ^ H2, C4 = B3 ^ N3, D4 = B3 ^ H3."""

    b3: frozenset[int]
    c4: frozenset[int]
    d4: frozenset[int]
    series: tuple[ChiefSeries, ...]


def verify_chief_match(s1: ChiefSeries, s2: ChiefSeries, match: ChiefSeriesMatch) -> bool:
    """Re-verify every witness of a match against the two series' factors."""
    k = len(s1.factors)
    if sorted(match.tau) != list(range(1, k + 1)) or len(match.witnesses) != k:
        return False
    for i in range(k):
        w = match.witnesses[i]
        if w.source != s1.factors[i].theory:
            return False
        if w.target != s2.factors[match.tau[i] - 1].theory:
            return False
        if not w.verify():
            return False
    return True


def _check_series(sct: SuperclassPartition, series: ChiefSeries) -> None:
    if series.base != sct:
        raise SeriesMismatchError("series does not belong to this theory")


def jordan_holder_match(
    sct: SuperclassPartition,
    s1: ChiefSeries,
    s2: ChiefSeries,
    *,
    method: str = "auto",
) -> ChiefSeriesMatch:
    """Match the factors of two chief series with verified isomorphisms.

    method 'direct' searches factor isomorphisms and extracts a perfect
    matching; 'constructive' follows the butterfly refinement; 'auto' tries
    direct first.  Both paths verify every witness before returning.
    """
    _check_series(sct, s1)
    _check_series(sct, s2)
    if s1.length != s2.length:
        raise SeriesMismatchError("chief series of one theory must share a length")
    if method not in ("auto", "direct", "constructive"):
        raise ValueError(f"unknown method {method!r}")
    match: Optional[ChiefSeriesMatch] = None
    if method in ("auto", "direct"):
        match = _match_direct(s1, s2)
        if match is None and method == "direct":
            raise NoMatchError("no bipartite factor matching exists")
    if match is None:
        match = _match_constructive(sct, s1, s2)
    if not verify_chief_match(s1, s2, match):
        raise NoMatchError("produced match failed re-verification")
    return match


def _match_direct(s1: ChiefSeries, s2: ChiefSeries) -> Optional[ChiefSeriesMatch]:
    k = len(s1.factors)
    candidates: list[list[tuple[int, SctIsomorphism]]] = []
    for i in range(k):
        row = []
        for j in range(k):
            iso = find_sct_iso(s1.factors[i].theory, s2.factors[j].theory)
            if iso is not None:
                row.append((j, iso))
        if not row:
            return None
        candidates.append(row)
    order = sorted(range(k), key=lambda i: len(candidates[i]))
    assignment: dict[int, tuple[int, SctIsomorphism]] = {}
    used: set[int] = set()

    def place(pos: int) -> bool:
        if pos == k:
            return True
        i = order[pos]
        for j, iso in candidates[i]:
            if j in used:
                continue
            used.add(j)
            assignment[i] = (j, iso)
            if place(pos + 1):
                return True
            used.discard(j)
            del assignment[i]
        return False

    if not place(0):
        return None
    tau = tuple(assignment[i][0] + 1 for i in range(k))
    witnesses = tuple(assignment[i][1] for i in range(k))
    return ChiefSeriesMatch(tau, witnesses)


# ---------------------------------------------------------------------------
# constructive path: contexts, factors and transports


@dataclass(eq=False)
class _Context:
    """A theory together with each element's footprint in the root group."""

    theory: SuperclassPartition
    roots: tuple[frozenset[int], ...]


@dataclass(eq=False)
class _Factor:
    theory: SuperclassPartition
    roots: tuple[frozenset[int], ...]


def _top_context(sct: SuperclassPartition) -> _Context:
    return _Context(sct, tuple(frozenset({g}) for g in range(sct.parent.order)))


def _union_roots(ctx: _Context, members: frozenset[int]) -> frozenset[int]:
    out: set[int] = set()
    for c in members:
        out |= ctx.roots[c]
    return frozenset(out)


def _factor_of(ctx: _Context, upper: frozenset[int], lower: frozenset[int]) -> _Factor:
    ind = subquotient(ctx.theory, lower, upper)
    roots = tuple(_union_roots(ctx, ind.coset_members[e]) for e in range(ind.group.order))
    return _Factor(ind.theory, roots)


def _restrict_context(
    ctx: _Context, node: frozenset[int]
) -> tuple[_Context, Callable[[frozenset[int]], frozenset[int]]]:
    ind = restrict(ctx.theory, node)
    pos = {int(ind.inclusion.map[i]): i for i in range(ind.group.order)}
    roots = tuple(_union_roots(ctx, ind.coset_members[e]) for e in range(ind.group.order))

    def map_node(subset: frozenset[int]) -> frozenset[int]:
        return frozenset(pos[g] for g in subset)

    return _Context(ind.theory, roots), map_node


def _deflate_context(
    ctx: _Context, node: frozenset[int]
) -> tuple[_Context, Callable[[frozenset[int]], frozenset[int]]]:
    ind = deflate(ctx.theory, node)
    roots = tuple(_union_roots(ctx, ind.coset_members[e]) for e in range(ind.group.order))

    def map_node(subset: frozenset[int]) -> frozenset[int]:
        return ind.projection.image_of_set(subset)

    return _Context(ind.theory, roots), map_node


def _transport_element_map(src: _Factor, dst: _Factor) -> np.ndarray:
    """Identify two constructions of the same factor by root footprints."""
    lookup = {dst.roots[b]: b for b in range(dst.theory.parent.order)}
    table = np.empty(src.theory.parent.order, dtype=np.int64)
    for a in range(src.theory.parent.order):
        if src.roots[a] not in lookup:
            raise TheoremViolationError("factor transports do not align")
        table[a] = lookup[src.roots[a]]
    return table


def _transport_pair(
    hom: Homomorphism,
    child_src: _Factor,
    child_dst: _Factor,
    parent_src: _Factor,
    parent_dst: _Factor,
) -> Homomorphism:
    """Lift a child-context witness onto the parent-context factors."""
    down = _transport_element_map(parent_src, child_src)
    up = _transport_element_map(child_dst, parent_dst)
    mapping = up[hom.map[down]]
    return Homomorphism(parent_src.theory.parent, parent_dst.theory.parent, mapping)


_Pairs = list[tuple[int, Homomorphism]]


def _match_chains(
    ctx: _Context,
    a: tuple[frozenset[int], ...],
    b: tuple[frozenset[int], ...],
) -> tuple[list[_Factor], list[_Factor], _Pairs]:
    """Match the factors of two maximal chains of ctx.theory.

    Returns the factor lists of both chains plus, for each position i of
    the first chain, the matched position j of the second chain and a
    verified group isomorphism between the factor groups.
    """
    fa = [_factor_of(ctx, a[k], a[k + 1]) for k in range(len(a) - 1)]
    fb = [_factor_of(ctx, b[k], b[k + 1]) for k in range(len(b) - 1)]
    if a == b:
        pairs: _Pairs = [
            (k, Homomorphism.identity(fa[k].theory.parent)) for k in range(len(fa))
        ]
        return fa, fb, pairs

    size = len(a)
    common = [j for j in range(1, size - 1) if a[j] == b[j]]
    if common:
        j = common[0]
        node = a[j]
        pairs = [(-1, None)] * (size - 1)  # type: ignore[list-item]
        # quotient side: positions 0..j-1
        qctx, qmap = _deflate_context(ctx, node)
        a_head = tuple(qmap(x) for x in a[: j + 1])
        b_head = tuple(qmap(x) for x in b[: j + 1])
        fa_h, fb_h, head_pairs = _match_chains(qctx, a_head, b_head)
        for i in range(j):
            tgt, hom = head_pairs[i]
            lifted = _transport_pair(hom, fa_h[i], fb_h[tgt], fa[i], fb[tgt])
            pairs[i] = (tgt, lifted)
        # subgroup side: positions j..end
        rctx, rmap = _restrict_context(ctx, node)
        a_tail = tuple(rmap(x) for x in a[j:])
        b_tail = tuple(rmap(x) for x in b[j:])
        fa_t, fb_t, tail_pairs = _match_chains(rctx, a_tail, b_tail)
        for i in range(len(a_tail) - 1):
            tgt, hom = tail_pairs[i]
            lifted = _transport_pair(hom, fa_t[i], fb_t[tgt], fa[j + i], fb[j + tgt])
            pairs[j + i] = (j + tgt, lifted)
        return fa, fb, pairs

    if size == 3:
        # diamond: a = (G, X, 1), b = (G, Y, 1) with X ^ Y = 1 and XY = G
        x, y = a[1], b[1]
        group = ctx.theory.parent
        if x & y != frozenset({0}) or product_subgroup(group, x, y) != frozenset(
            range(group.order)
        ):
            raise TheoremViolationError("distinct maximal chains of height 2 must form a diamond")
        up = _canonical_coset_map(
            fa[1].theory.parent, fa[1].roots, fb[0].theory.parent, fb[0].roots
        )  # X/1 -> G/Y
        down = _canonical_coset_map(
            fb[1].theory.parent, fb[1].roots, fa[0].theory.parent, fa[0].roots
        )  # Y/1 -> G/X
        return fa, fb, [(1, down.inverse()), (0, up)]

    chains = _zassenhaus_node_chains(ctx.theory, a, b)
    full = [a] + chains + [b]
    running: Optional[tuple[list[_Factor], _Pairs]] = None
    fa_first: list[_Factor] = []
    for left, right in zip(full[:-1], full[1:]):
        fl, fr, step = _match_chains(ctx, left, right)
        if running is None:
            fa_first = fl
            running = (fr, step)
        else:
            _, acc = running
            composed: _Pairs = []
            for i in range(len(acc)):
                mid, hom1 = acc[i]
                tgt, hom2 = step[mid]
                composed.append((tgt, hom2.compose(hom1)))
            running = (fr, composed)
    assert running is not None
    return fa_first, running[0], running[1]


def _completion_below(lattice: NormLattice, node: frozenset[int]) -> list[frozenset[int]]:
    """Greedy maximal descent from node (exclusive) to the trivial subgroup."""
    out = []
    current = lattice.index_of(node)
    while current != lattice.bottom:
        below = lattice.covers_of(current)
        chosen = min(below, key=lambda i: (len(lattice.nodes[i]), sorted(lattice.nodes[i])))
        out.append(lattice.nodes[chosen])
        current = chosen
    return out


def _dedupe(nodes: Sequence[frozenset[int]]) -> tuple[frozenset[int], ...]:
    seen = []
    for node in nodes:
        if node not in seen:
            seen.append(node)
    return tuple(seen)


def _zassenhaus_node_chains(
    sct: SuperclassPartition,
    a: tuple[frozenset[int], ...],
    b: tuple[frozenset[int], ...],
) -> list[tuple[frozenset[int], ...]]:
    """The four bridging chains between two everywhere-different series."""
    lattice = norm_lattice(sct)
    b3 = a[1] & b[1]
    c4 = b3 & a[2]
    d4 = b3 & b[2]
    tail_c = _completion_below(lattice, c4)
    tail_d = _completion_below(lattice, d4)
    z2 = _dedupe([a[0], a[1], a[2], c4, *tail_c])
    z3 = _dedupe([a[0], a[1], b3, c4, *tail_c])
    z4 = _dedupe([b[0], b[1], b3, d4, *tail_d])
    z5 = _dedupe([b[0], b[1], b[2], d4, *tail_d])
    return [z2, z3, z4, z5]


def build_zassenhaus_chains(
    sct: SuperclassPartition, s1: ChiefSeries, s2: ChiefSeries
) -> ZassenhausChains:
    """The six series of the butterfly refinement, each verified.

    Applies when the series differ at their second entry and have at least
    four entries; otherwise NotApplicableError is raised (the caller
    recurses into the shared subgroup or quotient instead).  Degenerate
    intersections collapse some of the six chains onto each other, which is
    harmless: every returned chain is verified as a chief series.
    """
    _check_series(sct, s1)
    _check_series(sct, s2)
    a, b = s1.chain, s2.chain
    if len(a) < 4:
        raise NotApplicableError("series too short for the butterfly construction")
    if a[1] == b[1]:
        raise NotApplicableError("series agree at their second entry")
    bridges = _zassenhaus_node_chains(sct, a, b)
    lattice = norm_lattice(sct)
    series = [s1]
    for nodes in bridges:
        series.append(make_chief_series(sct, nodes, lattice=lattice))
    series.append(s2)
    lengths = {s.length for s in series}
    assert len(lengths) == 1, "all six series must share the common length"
    b3 = a[1] & b[1]
    return ZassenhausChains(b3=b3, c4=b3 & a[2], d4=b3 & b[2], series=tuple(series))


def _match_constructive(
    sct: SuperclassPartition, s1: ChiefSeries, s2: ChiefSeries
) -> ChiefSeriesMatch:
    ctx = _top_context(sct)
    fa, fb, pairs = _match_chains(ctx, s1.chain, s2.chain)
    witnesses = []
    tau = []
    for i, (j, hom) in enumerate(pairs):
        source = s1.factors[i].theory
        target = s2.factors[j].theory
        if hom.source != source.parent or hom.target != target.parent:
            raise TheoremViolationError("constructive match landed on wrong factor groups")
        witnesses.append(SctIsomorphism(source, target, hom))
        tau.append(j + 1)
    return ChiefSeriesMatch(tuple(tau), tuple(witnesses))
