import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relmax.errors import UsageError
from relmax.perm import (
    Permutation, are_conjugate, centralizer, derived_subgroup, direct_product,
    group_from_generators, induced_automorphism_group, intersection, is_normal, join,
    normal_closure, normalizer, parse_cycles, format_cycles, quotient_by, read_group_spec,
    subgroup_generated, write_group_spec,
)
from relmax.lattice import are_isomorphic, normal_subgroups

from conftest import group


def P(text, n):
    return Permutation.from_cycles(text, n)


class TestPermutation:
    def test_right_action(self):
        a, b = P("(0 1)", 3), P("(1 2)", 3)
        # x^(ab) = (x^a)^b
        for x in range(3):
            assert (a * b)(x) == b(a(x))

    def test_inverse_and_order(self):
        c = P("(0 1 2 3)", 5)
        assert (c * ~c).is_identity()
        assert c.order() == 4
        assert (c ** 4).is_identity()
        assert c.cycle_type() == (4, 1)

    def test_cycles_round_trip(self):
        g = (2, 0, 1, 4, 3)
        assert parse_cycles(format_cycles(g), 5) == g

    def test_rejects_non_permutation(self):
        with pytest.raises(UsageError):
            Permutation([0, 0, 1])


class TestGroups:
    def test_generated_orders(self):
        assert group_from_generators([], 3).order == 1
        assert group_from_generators([P("(0 1 2)", 3), P("(0 1)", 3)], 3).order == 6
        A5 = group_from_generators([P("(0 1 2 3 4)", 5), P("(0 1 2)", 5)], 5)
        assert A5.order == 60 == len(A5.elements)

    def test_identity_is_index_zero(self):
        G = group("Sym(4)")
        assert G.elements[0] == tuple(range(4))
        assert (G.table[0] == np.arange(G.order)).all()

    def test_table_is_associative(self):
        t = group("Sym(4)").table
        a, b, c = np.meshgrid(*[np.arange(24)] * 3, indexing="ij")
        assert (t[t[a, b], c] == t[a, t[b, c]]).all()

    def test_inverse_table(self):
        G = group("Alt(5)")
        assert (G.table[np.arange(60), G.inv] == 0).all()

    def test_subgroup_generated(self):
        S4 = group("Sym(4)")
        assert subgroup_generated(S4, [Permutation.identity(4)]).order == 1
        assert subgroup_generated(group("Sym(3)"), [P("(0 1 2)", 3)]).order == 3
        V = subgroup_generated(S4, [P("(0 1)", 4), P("(2 3)", 4)])
        assert V.order == 4 and not is_normal(V)

    def test_element_outside_group(self):
        with pytest.raises(UsageError):
            subgroup_generated(group("Alt(4)"), [P("(0 1)", 4)])

    def test_conjugacy(self):
        S4 = group("Sym(4)")
        H = subgroup_generated(S4, [P("(0 1)", 4)])
        K = subgroup_generated(S4, [P("(0 1)(2 3)", 4)])
        assert are_conjugate(S4, H, H) == 0
        assert are_conjugate(S4, H, K) is None
        A = subgroup_generated(S4, [P("(0 1 2)", 4), P("(0 1)", 4)])
        B = subgroup_generated(S4, [P("(1 2 3)", 4), P("(1 2)", 4)])
        g = are_conjugate(S4, A, B)
        assert g is not None and A.conjugate(g) == B

    def test_normalizer_centralizer(self):
        S4 = group("Sym(4)")
        assert normalizer(S4, S4.whole) == S4.whole
        C3 = subgroup_generated(S4, [P("(0 1 2)", 4)])
        assert normalizer(S4, C3).order == 6
        assert centralizer(S4, S4.trivial) == S4.whole
        assert centralizer(S4, C3).order == 3

    def test_join_intersection_closure(self):
        S4 = group("Sym(4)")
        a = S4.index_of(P("(0 1)", 4))
        b = S4.index_of(P("(1 2 3)", 4))
        H = join(S4.trivial, [a])
        assert join(H, [b]) == S4.whole
        assert intersection(H, join(S4.trivial, [b])).order == 1
        assert normal_closure(S4, [S4.index_of(P("(0 1)(2 3)", 4))]).order == 4
        assert derived_subgroup(S4.whole).order == 12


class TestQuotients:
    def test_trivial_kernel(self):
        S3 = group("Sym(3)")
        Q, phi = quotient_by(S3, S3.trivial)
        assert Q.order == 6 and are_isomorphic(Q, S3) is not None
        assert phi.is_multiplicative()

    def test_sym3_mod_alt3(self):
        S3 = group("Sym(3)")
        A3 = derived_subgroup(S3.whole)
        Q, phi = quotient_by(S3, A3)
        assert Q.order == 2 and phi.kernel == A3

    def test_sym4_mod_klein(self):
        S4 = group("Sym(4)")
        V = normal_closure(S4, [S4.index_of(P("(0 1)(2 3)", 4))])
        Q, phi = quotient_by(S4, V)
        assert Q.order == 6 and not Q.is_abelian()
        assert phi.is_multiplicative()
        assert phi.preimage(Q.trivial) == V

    def test_non_normal_rejected(self):
        S3 = group("Sym(3)")
        with pytest.raises(UsageError):
            quotient_by(S3, subgroup_generated(S3, [P("(0 1)", 3)]))

    @pytest.mark.parametrize("name", ["Sym(4)", "D(12)", "Alt(4)×Z(2)", "Q(16)"])
    def test_every_quotient_map_is_multiplicative(self, name):
        G = group(name)
        for N, _ in normal_subgroups(G):
            Q, phi = quotient_by(G, N)
            assert Q.order * N.order == G.order
            assert phi.is_multiplicative()
            assert phi.image(G.whole) == Q.whole


class TestProducts:
    def test_orders(self):
        S3 = group("Sym(3)")
        assert direct_product(S3, group("Z(1)")).group.order == 6
        assert direct_product(S3, S3).group.order == 36

    def test_alt3_alt5(self):
        prod = direct_product(group("Alt(3)"), group("Alt(5)"))
        first = prod.embed(0)
        assert prod.group.order == 180 and is_normal(first)
        Q, _ = quotient_by(prod.group, first)
        assert Q.order == 60

    def test_declared_order_matches_enumeration(self):
        prod = direct_product(group("Sym(3)"), group("Z(4)"))
        assert prod.group.order == len(prod.group.elements) == 24


class TestAutomorphisms:
    def test_central_subgroup(self):
        Z6 = group("Z(6)")
        assert induced_automorphism_group(Z6.whole, Z6.whole).order == 1

    def test_inner_alt5(self):
        A5 = group("Alt(5)")
        assert induced_automorphism_group(A5.whole, A5.whole).order == 60

    def test_sym5_on_alt5(self):
        S5 = group("Sym(5)")
        assert induced_automorphism_group(S5.whole, derived_subgroup(S5.whole)).order == 120


class TestSpecFormat:
    def test_round_trip(self):
        G = group("PSL(2,7)")
        H = read_group_spec(write_group_spec(G))
        assert H.order == 168 and are_isomorphic(G, H) is not None

    def test_errors(self):
        with pytest.raises(UsageError):
            read_group_spec("(0 1)\n")
        with pytest.raises(UsageError):
            read_group_spec("degree: x\n")
        with pytest.raises(UsageError):
            read_group_spec("# nothing\n")


perms5 = st.permutations(range(5)).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.lists(perms5, min_size=0, max_size=3))
def test_spec_round_trip_property(gens):
    G = group_from_generators(gens, 5)
    H = read_group_spec(write_group_spec(G))
    assert H.order == G.order
    assert set(H.elements) == set(G.elements)


@settings(max_examples=60, deadline=None)
@given(perms5, perms5, perms5)
def test_conjugation_is_an_action(x, g, h):
    x, g, h = Permutation(x), Permutation(g), Permutation(h)
    conj = lambda a, b: ~b * a * b
    assert conj(conj(x, g), h) == conj(x, g * h)
    assert conj(x, g).cycle_type() == x.cycle_type()


@settings(max_examples=40, deadline=None)
@given(st.lists(perms5, min_size=1, max_size=2))
def test_quotients_of_generated_groups(gens):
    G = group_from_generators(gens, 5)
    D = derived_subgroup(G.whole)
    Q, phi = quotient_by(G, D)
    assert phi.is_multiplicative()
    assert Q.is_abelian()
