import numpy as np
import pytest

from relmax.config import override_caps
from relmax.errors import CapExceeded
from relmax.lattice import (
    all_subgroups, are_isomorphic, composition_factors, describe_simple, factors_of,
    fingerprint, normal_subgroups, profile, structure_predicates,
)
from relmax.perm import Permutation, direct_product, group_from_generators, subgroup_generated

from conftest import group
from oracles import all_subgroups_bruteforce, conjugacy_class_count

# [DERIVED] counts, each confirmed by the brute-force oracle
LATTICE_COUNTS = {
    "Sym(3)": (6, 4), "Sym(4)": (30, 11), "Alt(4)": (10, 5), "D(8)": (10, 8), "Q(8)": (6, 6),
    "Alt(5)": (59, 9), "Sym(5)": (156, 19), "Alt(6)": (501, 22), "PSL(2,7)": (179, 15),
}


def sl23():
    # SL(2,3) acting on the 8 nonzero vectors of F_3^2
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return tuple(pos[((v[0] * m[0] + v[1] * m[2]) % 3, (v[0] * m[1] + v[1] * m[3]) % 3)] for v in vecs)

    return group_from_generators([act((1, 1, 0, 1)), act((1, 0, 1, 1))], 8, name="SL(2,3)")


@pytest.mark.parametrize("name", sorted(LATTICE_COUNTS))
def test_known_counts(name):
    lat = all_subgroups(group(name))
    assert (len(lat), lat.num_classes) == LATTICE_COUNTS[name]


def test_trivial_group():
    lat = all_subgroups(group("Z(1)"))
    assert len(lat) == 1 and lat.num_classes == 1


def test_extra_groups_against_oracle():
    extra = [sl23(), direct_product(group("Z(4)"), group("Z(4)")).group,
             direct_product(group("Q(8)"), group("Z(2)")).group,
             direct_product(group("Z(2)"), group("Z(2)"), group("Z(2)"), group("Z(2)")).group]
    for G in extra:
        brute = all_subgroups_bruteforce(G.elements)
        lat = all_subgroups(G)
        assert len(lat) == len(brute)
        assert lat.num_classes == conjugacy_class_count(G.elements, brute)
        ours = {frozenset(G.elements[i] for i in H.elements) for H in lat.subgroups}
        assert ours == brute


def test_sl23_has_unique_involution():
    G = sl23()
    assert G.order == 24
    assert int(np.sum(G.element_orders == 2)) == 1
    assert are_isomorphic(G, group("Sym(4)")) is None


class TestLatticeShape:
    def test_sorted_classes(self):
        lat = all_subgroups(group("Sym(4)"))
        assert lat.rep(0).order == 1
        assert lat.subgroups[lat.whole_index].order == 24
        orders = [lat.rep(c).order for c in range(lat.num_classes)]
        assert orders == sorted(orders)

    def test_classes_are_conjugacy_orbits(self):
        G = group("Sym(4)")
        lat = all_subgroups(G)
        for c in range(lat.num_classes):
            H = lat.rep(c)
            orbit = {H.conjugate(g).key for g in range(G.order)}
            assert orbit == {lat.subgroups[i].key for i in lat.classes[c]}
            assert lat.normalizer_order(c) * lat.class_size(c) == G.order

    def test_inclusion(self):
        lat = all_subgroups(group("Sym(3)"))
        for i, H in enumerate(lat.subgroups):
            for j, K in enumerate(lat.subgroups):
                assert lat.includes(i, j) == (set(H.elements.tolist()) <= set(K.elements.tolist()))

    def test_find_and_gens(self):
        G = group("Alt(5)")
        lat = all_subgroups(G)
        for i, H in enumerate(lat.subgroups):
            assert lat.find(H) == i
            assert subgroup_generated(G, H.generator_perms()) == H

    def test_cap(self):
        with override_caps(lattice=10):
            with pytest.raises(CapExceeded):
                # a fresh instance, so no cached lattice is returned
                all_subgroups(group_from_generators(group("Sym(3)×Sym(3)")._gens, 6))


class TestNormalAndFactors:
    def test_simple_group(self):
        assert [N.order for N, _ in normal_subgroups(group("Alt(5)"))] == [1, 60]

    def test_sym4(self):
        rows = normal_subgroups(group("Sym(4)"))
        assert [N.order for N, _ in rows] == [1, 4, 12, 24]
        assert [m for _, m in rows] == [False, True, False, False]

    def test_abelian_all_normal(self):
        rows = normal_subgroups(group("Alt(3)×Alt(3)"))
        assert len(rows) == 6 == len(all_subgroups(group("Alt(3)×Alt(3)")))
        assert sorted(N.order for N, _ in rows) == [1, 3, 3, 3, 3, 9]

    def test_accepts_subgroup(self):
        S4 = group("Sym(4)")
        A4 = subgroup_generated(S4, [Permutation.from_cycles("(0 1 2)", 4),
                                     Permutation.from_cycles("(0 1)(2 3)", 4)])
        assert [N.order for N, _ in normal_subgroups(A4)] == [1, 4, 12]

    @pytest.mark.parametrize("name,expected", [
        ("Alt(5)", ["Alt(5)"]),
        ("Sym(4)", ["Z(2)", "Z(2)", "Z(2)", "Z(3)"]),
        ("Sym(5)", ["Alt(5)", "Z(2)"]),
        ("Z(2)×PSL(2,7)", ["PSL(2,7)", "Z(2)"]),
        ("Sym(3)×Alt(5)", ["Alt(5)", "Z(2)", "Z(3)"]),
    ])
    def test_composition_factors(self, name, expected):
        G = group(name)
        names = lambda fs: sorted(f.name for f in fs)
        assert names(composition_factors(G)) == expected
        assert names(composition_factors(G, tie_break="largest")) == expected
        assert names(factors_of(G.whole)) == expected

    @pytest.mark.parametrize("name", ["D(24)", "Sym(3)×Sym(4)", "Alt(4)×Alt(3)", "PGL(2,7)", "Sym(6)"])
    def test_fast_factors_match_lattice_route(self, name):
        G = group(name)
        assert sorted(factors_of(G.whole)) == sorted(composition_factors(G))

    def test_descriptors(self):
        assert describe_simple(7).kind == "cyclic-prime"
        assert describe_simple(60).kind == "alternating-5"
        assert describe_simple(168).kind == "linear-psl"
        assert describe_simple(60).primes == frozenset({2, 3, 5})
        assert not describe_simple(60).abelian


class TestPredicates:
    def test_z6(self):
        r = structure_predicates(group("Z(6)"))
        assert r.abelian and r.nilpotent and r.solvable and not r.simple

    def test_sym3(self):
        r = structure_predicates(group("Sym(3)"))
        assert r.solvable and not r.nilpotent and not r.abelian

    def test_alt5(self):
        r = structure_predicates(group("Alt(5)"))
        assert r.simple and r.perfect and not r.solvable

    def test_profile(self):
        p = profile(group("D(8)"))
        assert p.nilpotent and not p.abelian and p.solvable and p.primes == {2}


class TestIsomorphism:
    def test_self(self):
        G = group("Sym(4)")
        assert are_isomorphic(G, G) is not None

    def test_witness_is_homomorphism(self):
        G, H = group("D(6)"), group("Sym(3)")
        w = are_isomorphic(G, H)
        assert w is not None
        # the witness sends generators to elements satisfying the same relations
        src = [a for a, _ in w]
        img = [b for _, b in w]
        assert subgroup_generated(H, img) == H.whole
        for a, b in zip(src, img):
            assert a.order() == b.order()

    @pytest.mark.parametrize("a,b", [("Z(4)", "Z(2)×Z(2)"), ("D(8)", "Q(8)"), ("Sym(4)", "Alt(4)×Z(2)"),
                                     ("Z(6)", "Sym(3)"), ("D(12)", "Q(12)")])
    def test_non_isomorphic(self, a, b):
        assert are_isomorphic(group(a), group(b)) is None

    @pytest.mark.parametrize("a,b", [("Z(6)", "Alt(3)×Z(2)"),
                                     ("PGL(2,5)", "Sym(5)"), ("D(12)", "Sym(3)×Z(2)"),
                                     ("Alt(3)×Alt(3)", "Alt(3)×Z(3)")])
    def test_isomorphic(self, a, b):
        assert are_isomorphic(group(a), group(b)) is not None

    def test_fingerprint_is_invariant(self):
        assert fingerprint(group("PGL(2,5)")) == fingerprint(group("Sym(5)"))
