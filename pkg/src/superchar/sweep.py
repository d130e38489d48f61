"""Corpus-wide property sweeps.

Each check returns a list of human-readable violation strings (empty means
the property held everywhere it was tested).  The CLI `corpus-sweep`
subcommand and the acceptance suite both drive these functions; scales
(sample counts, order cutoffs) are arguments so smoke runs stay cheap.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .algebra import GroupAlgebraElement, hadamard, multiply
from .characters import (
    CharacterTable,
    ClassFunction,
    character_table,
    convolution,
    kernel_supernormality_crosscheck,
    orthogonality_report,
    pointwise,
    supercharacter_partition,
)
from .corpus import corpus
from .errors import SearchSpaceTooLargeError
from .groups import FiniteGroup, find_isomorphism, quotient, relabeled
from .lattice import (
    deflate,
    norm_lattice,
    restrict,
    star_of_restriction_deflation,
    subquotient,
)
from .schur import (
    SuperclassPartition,
    enumerate_scts,
    finest_sct,
    coarsest_sct,
    refines,
    verify_sct,
)
from .series import (
    all_chief_series,
    jordan_holder_match,
    diamond_witness,
    verify_chief_match,
)

GENCOL_TOL = 1e-8
NUMERIC_TOL = 1e-8


def enumerable_scts(group: FiniteGroup) -> list[SuperclassPartition]:
    """Enumerated theories, or nothing when the enumeration guard trips."""
    try:
        return enumerate_scts(group)
    except SearchSpaceTooLargeError:
        return []


# ---------------------------------------------------------------------------
# group-core and algebra properties


def check_group_basics(name: str, group: FiniteGroup) -> list[str]:
    out = []
    classes = group.conjugacy_classes
    covered = sorted(g for cls in classes for g in cls)
    if covered != list(range(group.order)):
        out.append(f"{name}: conjugacy classes do not partition the group")
    if any(group.order % len(cls) for cls in classes):
        out.append(f"{name}: some class size does not divide the order")
    q, _ = quotient(group, frozenset({0}))
    iso = find_isomorphism(q, group)
    if iso is None or not iso.is_bijective:
        out.append(f"{name}: G/1 is not isomorphic to G")
    return out


def _random_central(group: FiniteGroup, rng: np.random.Generator) -> GroupAlgebraElement:
    per_class = rng.integers(-5, 6, len(group.conjugacy_classes))
    return GroupAlgebraElement(group, per_class[group.class_ids])


def check_algebra(name: str, group: FiniteGroup, *, samples: int, seed: int = 7) -> list[str]:
    """Associativity/commutativity of the two products on random triples."""
    out = []
    rng = np.random.default_rng(seed)
    n = group.order
    for _ in range(samples):
        a = GroupAlgebraElement(group, rng.integers(-4, 5, n))
        b = GroupAlgebraElement(group, rng.integers(-4, 5, n))
        c = GroupAlgebraElement(group, rng.integers(-4, 5, n))
        if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
            out.append(f"{name}: ordinary product not associative")
            break
        if hadamard(hadamard(a, b), c) != hadamard(a, hadamard(b, c)):
            out.append(f"{name}: hadamard product not associative")
            break
        if hadamard(a, b) != hadamard(b, a):
            out.append(f"{name}: hadamard product not commutative")
            break
    return out


def check_theta(name: str, group: FiniteGroup, *, samples: int, seed: int = 11) -> list[str]:
    """Coefficients-to-functions carries products to convolution/pointwise.

    The convolution half is a statement about the center, so central
    elements are drawn; the pointwise half holds for arbitrary elements.
    """
    out = []
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a = _random_central(group, rng)
        b = _random_central(group, rng)
        fa = ClassFunction(group, a.coeffs.astype(np.complex128))
        fb = ClassFunction(group, b.coeffs.astype(np.complex128))
        left = np.asarray(multiply(a, b).coeffs, dtype=np.complex128)
        right = convolution(fa, fb).values
        if np.abs(left - right).max() > 1e-6:
            out.append(f"{name}: theta does not carry the ordinary product to convolution")
            break
        had = np.asarray(hadamard(a, b).coeffs, dtype=np.complex128)
        pw = pointwise(fa, fb).values
        if np.abs(had - pw).max() > 1e-9:
            out.append(f"{name}: theta does not carry hadamard to pointwise")
            break
    return out


# ---------------------------------------------------------------------------
# schur properties


def check_enumeration_properties(
    name: str, group: FiniteGroup, scts: list[SuperclassPartition]
) -> list[str]:
    out = []
    if not scts:
        return out
    keys = {s.key() for s in scts}
    if finest_sct(group).key() not in keys:
        out.append(f"{name}: finest theory missing from enumeration")
    if coarsest_sct(group).key() not in keys:
        out.append(f"{name}: coarsest theory missing from enumeration")
    for sct in scts:
        for part in sct.parts:
            inverse = frozenset(int(group.inv[g]) for g in part)
            if inverse not in sct.parts:
                out.append(f"{name}: inverse closure fails for {sct!r}")
                break
    return out


def check_meet_closure(
    name: str, group: FiniteGroup, scts: list[SuperclassPartition]
) -> tuple[list[str], int]:
    """Common refinements that happen to be valid theories must be enumerated.

    Not every pair has a valid meet; the count of pairs that do is recorded
    and returned alongside any violations.
    """
    out = []
    keys = {s.key() for s in scts}
    meets = 0
    for i, a in enumerate(scts):
        for b in scts[i + 1 :]:
            common = {}
            for g in range(group.order):
                key = (int(a.part_ids[g]), int(b.part_ids[g]))
                common.setdefault(key, []).append(g)
            parts = list(common.values())
            if not verify_sct(group, parts).valid:
                continue
            meets += 1
            if SuperclassPartition(group, parts).key() not in keys:
                out.append(f"{name}: a valid common refinement is missing from the enumeration")
    return out, meets


def check_relabel_invariance(name: str, group: FiniteGroup, seed: int = 3) -> list[str]:
    """Enumeration commutes with renaming the elements."""
    out = []
    base = {s.key() for s in enumerable_scts(group)}
    if not base:
        return out
    rng = np.random.default_rng(seed)
    for trial in range(2):
        perm = np.concatenate([[0], 1 + rng.permutation(group.order - 1)])
        other = relabeled(group, perm)
        mapped = set()
        inv = np.empty(group.order, dtype=np.int64)
        inv[perm] = np.arange(group.order)
        for sct in enumerable_scts(other):
            parts = [sorted(int(inv[g]) for g in part) for part in sct.parts]
            mapped.add(SuperclassPartition(group, parts).key())
        if mapped != base:
            out.append(f"{name}: enumeration changed under relabeling (trial {trial})")
    return out


def check_criterion_equivalence(
    name: str,
    group: FiniteGroup,
    scts: list[SuperclassPartition],
    table: Optional[CharacterTable] = None,
) -> list[str]:
    """The closure criterion agrees with the character-side definition."""
    out = []
    table = table or character_table(group)
    for sct in scts:
        try:
            data = supercharacter_partition(sct, table)
        except Exception as exc:
            out.append(f"{name}: character-side check failed for valid {sct!r}: {exc}")
            continue
        if len(data.x_partition) != sct.num_parts:
            out.append(f"{name}: part counts disagree for {sct!r}")
    return out


# ---------------------------------------------------------------------------
# lattice and series properties


def check_lattice_properties(name: str, sct: SuperclassPartition) -> list[str]:
    out = []
    lattice = norm_lattice(sct)  # closure + modularity asserted inside
    group = sct.parent
    nodes = lattice.nodes
    # restriction/deflation validity and the quotient correspondence
    for node in nodes:
        r = restrict(sct, node)
        if not verify_sct(r.group, [sorted(p) for p in r.theory.parts]).valid:
            out.append(f"{name}: restriction to {sorted(node)} is invalid")
        d = deflate(sct, node)
        if not verify_sct(d.group, [sorted(p) for p in d.theory.parts]).valid:
            out.append(f"{name}: deflation by {sorted(node)} is invalid")
        # supernormality upstairs matches supernormality in the quotient
        over = [h for h in nodes if node <= h]
        quotient_lattice = {
            frozenset(int(v) for v in d.projection.image_of_set(h)) for h in over
        }
        actual = set(norm_lattice(d.theory).nodes)
        if quotient_lattice != actual:
            out.append(f"{name}: quotient supernormal correspondence fails at {sorted(node)}")
        star = star_of_restriction_deflation(sct, node)
        if not refines(sct, star):
            out.append(f"{name}: theory does not refine its star product at {sorted(node)}")
    # compatibility of the two induction orders for every chain
    for h in nodes:
        for n in nodes:
            if h <= n:
                subquotient(sct, h, n)  # raises CompatibilityViolationError on mismatch
    return out


def check_diamond_witnesses(name: str, sct: SuperclassPartition) -> list[str]:
    out = []
    nodes = norm_lattice(sct).nodes
    for h in nodes:
        for n in nodes:
            try:
                witness = diamond_witness(sct, h, n)
            except Exception as exc:
                out.append(f"{name}: diamond witness failed for H={sorted(h)}, N={sorted(n)}: {exc}")
                continue
            if not witness.verify():
                out.append(f"{name}: diamond witness unverifiable for H={sorted(h)}, N={sorted(n)}")
    return out


def check_series_matching(name: str, sct: SuperclassPartition, *, constructive: bool = False) -> list[str]:
    out = []
    series = all_chief_series(sct)
    lengths = {s.length for s in series}
    if len(lengths) != 1:
        out.append(f"{name}: chief series lengths differ: {sorted(lengths)}")
        return out
    method = "constructive" if constructive else "direct"
    for i, s1 in enumerate(series):
        for s2 in series[i:]:
            try:
                match = jordan_holder_match(sct, s1, s2, method=method)
            except Exception as exc:
                out.append(f"{name}: no match between two series: {exc}")
                continue
            if not verify_chief_match(s1, s2, match):
                out.append(f"{name}: match failed re-verification")
    # factor multisets agree across the series
    def factor_key(series_obj):
        keys = []
        for factor in series_obj.factors:
            sizes = tuple(sorted(len(p) for p in factor.theory.parts))
            orders = tuple(sorted(int(v) for v in factor.group.element_orders))
            keys.append((factor.group.order, orders, sizes))
        return tuple(sorted(keys))

    base_key = factor_key(series[0])
    for s in series[1:]:
        if factor_key(s) != base_key:
            out.append(f"{name}: factor multiset differs between chief series")
    return out


# ---------------------------------------------------------------------------
# character properties


def check_gencol(name: str, group: FiniteGroup, table: CharacterTable) -> list[str]:
    out = []
    worst = 0.0
    for i, chi in enumerate(table.rows):
        for j, psi in enumerate(table.rows):
            conv = convolution(chi, psi)
            expected = chi.values / table.degrees[i] if i == j else np.zeros(group.order)
            worst = max(worst, float(np.abs(conv.values / group.order - expected).max()))
    if worst > GENCOL_TOL:
        out.append(f"{name}: generalized column orthogonality defect {worst:.2e}")
    return out


def check_supercharacters(
    name: str,
    sct: SuperclassPartition,
    table: CharacterTable,
) -> list[str]:
    out = []
    group = sct.parent
    try:
        data = supercharacter_partition(sct, table)
    except Exception as exc:
        out.append(f"{name}: supercharacter grouping failed for {sct!r}: {exc}")
        return out
    report = orthogonality_report(data)
    if report.max_defect() > NUMERIC_TOL:
        out.append(f"{name}: defect {report.max_defect():.2e} for {sct!r}")
    total = np.zeros(group.order, dtype=np.complex128)
    for s in data.sigma:
        total += s.values
    regular = np.zeros(group.order, dtype=np.complex128)
    regular[0] = group.order
    if np.abs(total - regular).max() > NUMERIC_TOL:
        out.append(f"{name}: supercharacters do not sum to the regular character")
    for i, ei in enumerate(data.idempotents):
        for j, ej in enumerate(data.idempotents):
            prod = np.asarray(multiply(ei, ej).coeffs, dtype=np.complex128)
            expect = np.asarray(ei.coeffs, dtype=np.complex128) if i == j else 0
            if np.abs(prod - expect).max() > NUMERIC_TOL:
                out.append(f"{name}: idempotents not orthogonal for {sct!r}")
                break
    crosscheck = kernel_supernormality_crosscheck(data)
    if not crosscheck.match:
        out.append(f"{name}: kernel intersections do not match the supernormal lattice")
    return out


# ---------------------------------------------------------------------------
# the full sweep


def sweep_group(
    name: str,
    group: FiniteGroup,
    *,
    algebra_samples: int = 10_000,
    theta_samples: int = 1_000,
    char_max_order: int = 24,
    equivalence_max_order: int = 12,
    constructive_jh: bool = False,
) -> dict:
    """Run every property suite against one group; returns a report dict."""
    violations: list[str] = []
    violations += check_group_basics(name, group)
    violations += check_algebra(name, group, samples=algebra_samples)
    scts = enumerable_scts(group)
    violations += check_enumeration_properties(name, group, scts)
    valid_meets = 0
    if group.order <= equivalence_max_order:
        violations += check_relabel_invariance(name, group)
        meet_violations, valid_meets = check_meet_closure(name, group, scts)
        violations += meet_violations
    table = None
    if group.order <= char_max_order:
        table = character_table(group)
        violations += check_theta(name, group, samples=theta_samples)
        violations += check_gencol(name, group, table)
        if group.order <= equivalence_max_order:
            violations += check_criterion_equivalence(name, group, scts, table)
    for sct in scts:
        violations += check_lattice_properties(name, sct)
        violations += check_diamond_witnesses(name, sct)
        violations += check_series_matching(name, sct, constructive=constructive_jh)
        if table is not None:
            violations += check_supercharacters(name, sct, table)
    return {
        "group": name,
        "order": group.order,
        "classes": len(group.conjugacy_classes),
        "theories": len(scts),
        "valid_meets": valid_meets,
        "violations": violations,
    }


def sweep_corpus(
    *,
    max_order: Optional[int] = None,
    names: Optional[Iterable[str]] = None,
    jobs: int = 1,
    algebra_samples: int = 10_000,
    theta_samples: int = 1_000,
    constructive_jh: bool = False,
) -> list[dict]:
    """Sweep every bundled group; reports come back in canonical name order."""
    selected = corpus(max_order=max_order)
    if names is not None:
        wanted = set(names)
        selected = {k: v for k, v in selected.items() if k in wanted}
    items = sorted(selected.items(), key=lambda kv: (kv[1].order, kv[0]))
    kwargs = dict(
        algebra_samples=algebra_samples,
        theta_samples=theta_samples,
        constructive_jh=constructive_jh,
    )
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                name: pool.submit(_sweep_by_name, name, kwargs) for name, _ in items
            }
            return [futures[name].result() for name, _ in items]
    return [sweep_group(name, group, **kwargs) for name, group in items]


def _sweep_by_name(name: str, kwargs: dict) -> dict:
    from .corpus import corpus_group

    return sweep_group(name, corpus_group(name), **kwargs)
