import pytest

from superchar.corpus import build_group
from superchar.errors import (
    NotConjugationInvariantError,
    NotSupernormalError,
    ParentMismatchError,
)
from superchar.groups import normal_subgroups, subgroup_generated, subgroup_group
from superchar.lattice import (
    deflate,
    is_supernormal,
    norm_lattice,
    restrict,
    star_of_restriction_deflation,
    star_product,
    subquotient,
    supernormal_subgroups,
)
from superchar.schur import coarsest_sct, enumerate_scts, finest_sct, refines


def part_labels(group, theory):
    return sorted(
        tuple(sorted(group.label_of(e) for e in part)) for part in theory.parts
    )


class TestSupernormal:
    def test_trivial_and_full(self, nine_part_sct, c3xc6_subgroups):
        assert is_supernormal(nine_part_sct, c3xc6_subgroups["1"])
        assert is_supernormal(nine_part_sct, c3xc6_subgroups["G"])

    def test_xy2_supernormal(self, nine_part_sct, c3xc6_subgroups):
        assert is_supernormal(nine_part_sct, c3xc6_subgroups["xy2"])

    def test_x_not_supernormal(self, nine_part_sct, c3xc6_subgroups):
        # the part {x, x*y^4} is not contained in <x>
        assert not is_supernormal(nine_part_sct, c3xc6_subgroups["x"])

    def test_non_subgroup(self, nine_part_sct):
        assert not is_supernormal(nine_part_sct, frozenset({0, 1}))


class TestNormLattice:
    def test_coarsest(self):
        g = build_group("d4")
        lattice = norm_lattice(coarsest_sct(g))
        assert [len(n) for n in lattice.nodes] == [1, 8]

    def test_finest_is_all_normal_subgroups(self):
        for name in ["s3", "d4", "a4", "c6"]:
            g = build_group(name)
            lattice = norm_lattice(finest_sct(g))
            assert list(lattice.nodes) == sorted(
                normal_subgroups(g), key=lambda s: (len(s), sorted(s))
            )

    def test_c3xc6_lattice(self, nine_part_sct, c3xc6_subgroups):
        lattice = norm_lattice(nine_part_sct)
        expected = sorted(
            [
                c3xc6_subgroups["1"],
                c3xc6_subgroups["xy2"],
                c3xc6_subgroups["y2"],
                c3xc6_subgroups["y"],
                c3xc6_subgroups["x_y2"],
                c3xc6_subgroups["G"],
            ],
            key=lambda s: (len(s), sorted(s)),
        )
        assert list(lattice.nodes) == expected
        assert len(lattice.hasse_edges) == 7

    def test_c3xc6_hasse_structure(self, nine_part_sct, c3xc6_subgroups):
        lattice = norm_lattice(nine_part_sct)
        by_node = {node: i for i, node in enumerate(lattice.nodes)}
        edges = {
            (lattice.nodes[a], lattice.nodes[b]) for a, b in lattice.hasse_edges
        }
        s = c3xc6_subgroups
        assert edges == {
            (s["1"], s["xy2"]),
            (s["1"], s["y2"]),
            (s["y2"], s["y"]),
            (s["y2"], s["x_y2"]),
            (s["xy2"], s["x_y2"]),
            (s["y"], s["G"]),
            (s["x_y2"], s["G"]),
        }
        assert by_node[s["1"]] == lattice.bottom

    def test_meet_join_tables(self, nine_part_sct, c3xc6_subgroups):
        lattice = norm_lattice(nine_part_sct)
        i = lattice.index_of(c3xc6_subgroups["y"])
        j = lattice.index_of(c3xc6_subgroups["x_y2"])
        assert lattice.nodes[lattice.meet[i, j]] == c3xc6_subgroups["y2"]
        assert lattice.nodes[lattice.join[i, j]] == c3xc6_subgroups["G"]


class TestRestrictDeflate:
    def test_restrict_to_whole_group(self, nine_part_sct, c3xc6_group):
        induced = restrict(nine_part_sct, frozenset(range(c3xc6_group.order)))
        assert induced.theory.key() == nine_part_sct.key()

    def test_restrict_y2(self, nine_part_sct, c3xc6_subgroups, c3xc6_group):
        induced = restrict(nine_part_sct, c3xc6_subgroups["y2"])
        flat = induced.flat_parts()
        lab = {s: i for i, s in enumerate(c3xc6_group.labels)}
        assert flat == frozenset(
            [frozenset({0}), frozenset({lab["y^2"], lab["y^4"]})]
        )

    def test_restrict_xy2_singletons(self, nine_part_sct, c3xc6_subgroups):
        induced = restrict(nine_part_sct, c3xc6_subgroups["xy2"])
        assert sorted(len(p) for p in induced.theory.parts) == [1, 1, 1]

    def test_restrict_requires_supernormal(self, nine_part_sct, c3xc6_subgroups):
        with pytest.raises(NotSupernormalError):
            restrict(nine_part_sct, c3xc6_subgroups["x"])

    def test_deflate_by_trivial(self, nine_part_sct):
        induced = deflate(nine_part_sct, frozenset({0}))
        assert induced.theory.key() == nine_part_sct.key()

    def test_deflate_by_y(self, nine_part_sct, c3xc6_subgroups):
        induced = deflate(nine_part_sct, c3xc6_subgroups["y"])
        assert induced.group.order == 3
        assert sorted(len(p) for p in induced.theory.parts) == [1, 1, 1]

    def test_deflate_by_x_y2(self, nine_part_sct, c3xc6_subgroups):
        induced = deflate(nine_part_sct, c3xc6_subgroups["x_y2"])
        assert induced.group.order == 2
        assert sorted(len(p) for p in induced.theory.parts) == [1, 1]


class TestSubquotient:
    def test_whole_range(self, nine_part_sct, c3xc6_group):
        induced = subquotient(nine_part_sct, frozenset({0}), frozenset(range(18)))
        assert induced.theory.key() == nine_part_sct.key()

    def test_x_y2_mod_xy2(self, nine_part_sct, c3xc6_subgroups):
        induced = subquotient(nine_part_sct, c3xc6_subgroups["xy2"], c3xc6_subgroups["x_y2"])
        assert induced.group.order == 3
        assert sorted(len(p) for p in induced.theory.parts) == [1, 2]

    def test_y_mod_y2(self, nine_part_sct, c3xc6_subgroups):
        induced = subquotient(nine_part_sct, c3xc6_subgroups["y2"], c3xc6_subgroups["y"])
        assert induced.group.order == 2
        assert sorted(len(p) for p in induced.theory.parts) == [1, 1]

    def test_requires_containment(self, nine_part_sct, c3xc6_subgroups):
        with pytest.raises(NotSupernormalError):
            subquotient(nine_part_sct, c3xc6_subgroups["y"], c3xc6_subgroups["x_y2"])

    @pytest.mark.parametrize("name", ["c6", "s3", "d4", "c2xc2xc2"])
    def test_compatibility_exhaustive_small(self, name):
        g = build_group(name)
        for sct in enumerate_scts(g):
            nodes = supernormal_subgroups(sct)
            for h in nodes:
                for n in nodes:
                    if h <= n:
                        subquotient(sct, h, n)  # both routes compared internally

    @pytest.mark.parametrize("name", ["c6", "s3", "d4", "q8", "c3xc3"])
    def test_quotient_correspondence(self, name):
        # supernormal above N corresponds to supernormal in the deflation
        g = build_group(name)
        for sct in enumerate_scts(g):
            nodes = supernormal_subgroups(sct)
            for n in nodes:
                d = deflate(sct, n)
                over = {d.projection.image_of_set(h) for h in nodes if n <= h}
                assert over == set(norm_lattice(d.theory).nodes)


class TestStarProduct:
    def test_coarsest_times_coarsest(self):
        g = build_group("d4")
        n = subgroup_generated(g, [1])  # the rotation subgroup
        inner = coarsest_sct(subgroup_group(g, n)[0])
        from superchar.groups import quotient

        outer = coarsest_sct(quotient(g, n)[0])
        star = star_product(g, n, inner, outer)
        expected = [
            frozenset({0}),
            frozenset(n) - {0},
            frozenset(range(g.order)) - n,
        ]
        assert set(star.parts) == set(expected)

    def test_trivial_normal_lifts(self):
        g = build_group("s3")
        n = frozenset({0})
        inner = coarsest_sct(subgroup_group(g, n)[0])
        from superchar.groups import quotient

        q, proj = quotient(g, n)
        outer = finest_sct(q)
        star = star_product(g, n, inner, outer)
        lifted = {proj.preimage_of_set(part) for part in outer.parts}
        assert set(star.parts) == lifted

    def test_c3xc6_star_refinement(self, nine_part_sct, c3xc6_subgroups):
        star = star_of_restriction_deflation(nine_part_sct, c3xc6_subgroups["y"])
        assert star.validated
        assert refines(nine_part_sct, star)
        assert star.num_parts == 5  # 3 inner parts + 3 quotient parts - 1

    def test_part_count_formula(self, nine_part_sct):
        from superchar.lattice import deflate, restrict

        for node in supernormal_subgroups(nine_part_sct):
            inner = restrict(nine_part_sct, node)
            outer = deflate(nine_part_sct, node)
            star = star_product(nine_part_sct.parent, node, inner.theory, outer.theory)
            assert star.num_parts == inner.theory.num_parts + outer.theory.num_parts - 1

    def test_conjugation_invariance_required(self):
        s3 = build_group("s3")
        a3 = subgroup_generated(s3, [min(g for g in range(6) if s3.element_orders[g] == 3)])
        sub, _ = subgroup_group(s3, a3)
        from superchar.groups import quotient

        q, _ = quotient(s3, a3)
        with pytest.raises(NotConjugationInvariantError):
            star_product(s3, a3, finest_sct(sub), coarsest_sct(q))

    def test_parent_mismatch(self):
        g = build_group("c6")
        n = subgroup_generated(g, [2])
        from superchar.groups import quotient

        q, _ = quotient(g, n)
        with pytest.raises(ParentMismatchError):
            star_product(g, n, finest_sct(g), coarsest_sct(q))

    @pytest.mark.parametrize("name", ["c6", "s3", "d4", "c8"])
    def test_refinement_everywhere(self, name):
        g = build_group(name)
        for sct in enumerate_scts(g):
            for node in supernormal_subgroups(sct):
                star = star_of_restriction_deflation(sct, node)
                assert refines(sct, star)
