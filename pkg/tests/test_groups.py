import numpy as np
import pytest

from superchar.corpus import build_group
from superchar.errors import (
    NoIdentityError,
    NotAssociativeError,
    NotLatinSquareError,
    NotNormalError,
    NotSubgroupError,
    OrderLimitExceededError,
    ProductNotSubgroupError,
)
from superchar.groups import (
    find_isomorphism,
    from_cayley_table,
    from_permutation_generators,
    intersect,
    is_normal,
    is_subgroup,
    normal_subgroups,
    product_subgroup,
    quotient,
    relabeled,
    subgroup_generated,
    subgroup_group,
)

# a Latin square with identity 0 that is not associative: (1*1)*2 != 1*(1*2)
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


class TestLoading:
    def test_c2_from_table(self):
        g = from_cayley_table([[0, 1], [1, 0]], name="c2")
        assert g.order == 2
        assert g.inv.tolist() == [0, 1]

    def test_permutation_generators_c3xc6(self):
        # (0 1 2) and (3 4 5 6 7 8) on 9 points
        g = from_permutation_generators(
            [[1, 2, 0, 3, 4, 5, 6, 7, 8], [0, 1, 2, 4, 5, 6, 7, 8, 3]]
        )
        assert g.order == 18
        # commutativity by brute force
        for a in range(18):
            for b in range(18):
                assert g.mul[a, b] == g.mul[b, a]
        assert find_isomorphism(g, build_group("c3xc6")) is not None

    def test_duplicate_row_entry_rejected(self):
        with pytest.raises(NotLatinSquareError):
            from_cayley_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])

    def test_no_identity_rejected(self):
        # a Latin square where no element is a two-sided identity
        with pytest.raises(NoIdentityError):
            from_cayley_table([[1, 2, 0], [0, 1, 2], [2, 0, 1]])

    def test_identity_normalized_to_zero(self):
        # C3 written with identity at index 2
        table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
        g = from_cayley_table(table)
        assert g.mul[0].tolist() == [0, 1, 2]

    def test_non_associative_rejected(self):
        with pytest.raises(NotAssociativeError):
            from_cayley_table(NONASSOC_LOOP)

    def test_order_limit_table(self):
        n = 513
        table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        with pytest.raises(OrderLimitExceededError):
            from_cayley_table(table)

    def test_order_limit_generators(self):
        n = 513
        cycle = [(i + 1) % n for i in range(n)]
        with pytest.raises(OrderLimitExceededError):
            from_permutation_generators([cycle])


class TestConjugacyClasses:
    def test_abelian_singletons(self, c3xc6_group):
        assert all(len(c) == 1 for c in c3xc6_group.conjugacy_classes)
        assert len(c3xc6_group.conjugacy_classes) == 18

    def test_s3_sizes(self):
        sizes = sorted(len(c) for c in build_group("s3").conjugacy_classes)
        assert sizes == [1, 2, 3]

    @pytest.mark.parametrize("name", ["c6", "s3", "d4", "q8", "a4", "dic3", "d6"])
    def test_partition_and_divisibility(self, name):
        g = build_group(name)
        classes = g.conjugacy_classes
        assert sorted(x for c in classes for x in c) == list(range(g.order))
        assert all(g.order % len(c) == 0 for c in classes)
        assert classes[0] == frozenset({0})


class TestSubgroups:
    def test_empty_generators(self, c3xc6_group):
        assert subgroup_generated(c3xc6_group, []) == frozenset({0})

    def test_xy2_supernormal(self, c3xc6_group, c3xc6_subgroups):
        labels = {c3xc6_group.label_of(g) for g in c3xc6_subgroups["xy2"]}
        assert labels == {"1", "x*y^2", "x^2*y^4"}

    def test_paper_y(self, c3xc6_subgroups):
        assert len(c3xc6_subgroups["y"]) == 6

    def test_product_and_intersection_idempotent(self, c3xc6_group, c3xc6_subgroups):
        h = c3xc6_subgroups["y"]
        assert product_subgroup(c3xc6_group, h, h) == h
        assert intersect(h, h) == h

    def test_c3xc6_lattice_products(self, c3xc6_group, c3xc6_subgroups):
        hn = product_subgroup(c3xc6_group, c3xc6_subgroups["xy2"], c3xc6_subgroups["y2"])
        assert hn == c3xc6_subgroups["x_y2"]
        assert intersect(c3xc6_subgroups["xy2"], c3xc6_subgroups["y2"]) == frozenset({0})
        hn2 = product_subgroup(c3xc6_group, c3xc6_subgroups["y"], c3xc6_subgroups["x_y2"])
        assert hn2 == c3xc6_subgroups["G"]
        assert intersect(c3xc6_subgroups["y"], c3xc6_subgroups["x_y2"]) == c3xc6_subgroups["y2"]

    def test_product_not_subgroup(self):
        s3 = build_group("s3")
        reflections = [g for g in range(6) if s3.element_orders[g] == 2]
        h = subgroup_generated(s3, [reflections[0]])
        n = subgroup_generated(s3, [reflections[1]])
        with pytest.raises(ProductNotSubgroupError):
            product_subgroup(s3, h, n)

    def test_product_requires_subgroups(self):
        c4 = build_group("c4")
        with pytest.raises(NotSubgroupError):
            product_subgroup(c4, frozenset({1}), frozenset({0}))

    def test_normality(self):
        s3 = build_group("s3")
        a3 = subgroup_generated(s3, [min(g for g in range(6) if s3.element_orders[g] == 3)])
        assert is_normal(s3, a3)
        refl = min(g for g in range(6) if s3.element_orders[g] == 2)
        assert not is_normal(s3, subgroup_generated(s3, [refl]))

    def test_normal_subgroups_s3(self):
        s3 = build_group("s3")
        assert sorted(len(n) for n in normal_subgroups(s3)) == [1, 3, 6]


class TestQuotients:
    def test_trivial_kernel(self):
        d4 = build_group("d4")
        q, proj = quotient(d4, frozenset({0}))
        assert q.order == d4.order
        assert proj.is_bijective
        assert find_isomorphism(q, d4) is not None

    def test_full_kernel(self):
        d4 = build_group("d4")
        q, _ = quotient(d4, frozenset(range(8)))
        assert q.order == 1

    def test_c3xc6_quotient_by_y(self, c3xc6_group, c3xc6_subgroups):
        q, proj = quotient(c3xc6_group, c3xc6_subgroups["y"])
        assert q.order == 3
        assert proj.map[0] == 0

    def test_quotient_rejects_non_normal(self):
        s3 = build_group("s3")
        refl = min(g for g in range(6) if s3.element_orders[g] == 2)
        with pytest.raises(NotNormalError):
            quotient(s3, subgroup_generated(s3, [refl]))
        with pytest.raises(NotSubgroupError):
            quotient(s3, frozenset({0, refl, 5 - refl}))


class TestIsomorphisms:
    def test_identity_found(self):
        d4 = build_group("d4")
        iso = find_isomorphism(d4, d4)
        assert iso is not None and iso.is_bijective

    def test_c4_vs_klein_absent(self):
        assert find_isomorphism(build_group("c4"), build_group("c2xc2")) is None
        assert find_isomorphism(build_group("c2xc2"), build_group("c4")) is None

    def test_c3xc6_c3_pair(self, c3xc6_group, c3xc6_subgroups):
        sub, _ = subgroup_group(c3xc6_group, c3xc6_subgroups["xy2"])
        q, _ = quotient(c3xc6_group, c3xc6_subgroups["y"])
        iso = find_isomorphism(sub, q)
        assert iso is not None and iso.is_bijective

    @pytest.mark.parametrize("a,b", [("d4", "q8"), ("c6", "s3"), ("a4", "dic3")])
    def test_symmetric_failure(self, a, b):
        assert find_isomorphism(build_group(a), build_group(b)) is None
        assert find_isomorphism(build_group(b), build_group(a)) is None

    def test_relabeled_isomorphic(self):
        g = build_group("d6")
        rng = np.random.default_rng(5)
        perm = np.concatenate([[0], 1 + rng.permutation(g.order - 1)])
        h = relabeled(g, perm)
        iso = find_isomorphism(g, h)
        assert iso is not None and iso.is_bijective

    def test_subgroup_group_inclusion(self, c3xc6_group, c3xc6_subgroups):
        sub, inc = subgroup_group(c3xc6_group, c3xc6_subgroups["x_y2"])
        assert sub.order == 9
        assert is_subgroup(c3xc6_group, frozenset(int(v) for v in inc.map))
