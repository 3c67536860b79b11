import pytest

from relmax.classes import parse_class
from relmax.errors import HypothesisFailure, UsageError
from relmax.lattice import all_subgroups, are_isomorphic, normal_subgroups
from relmax.perm import (
    Permutation, derived_subgroup, intersection, normal_closure, quotient_by, subgroup_generated,
)
from relmax.reduction import (
    LEMMA6_VALUES, aut_product_check, class_flags, common_image_witness, d_x_radical, frattini_witness,
    full_reduction, h_x, hall_inheritance_check, hall_x_classes, is_isoschematism,
    isoschematic_equivalent, isoschematism_analysis, k_x, lift_x_subgroup, maps_scheme_to_scheme,
    normal_as_group, overgroup_criterion_check, proof_step_check, quotient_data, radical_analysis,
    reduction_check, section_k, simple_class_number_survey, simple_direct_factors, x_maximal_classes,
)

from conftest import group, product
from oracles import hall_count_bruteforce, is_abelian_set, kx_bruteforce, prime_divisors

pi = lambda *ps: parse_class("pi", ps)
spi = lambda *ps: parse_class("solvable-pi", ps)
ABELIAN = parse_class("abelian")
NILPOTENT = parse_class("nilpotent")
SOLVABLE = spi(2, 3, 5, 7)


def P(text, n):
    return Permutation.from_cycles(text, n)


def alt3_in_sym3():
    S3 = group("Sym(3)")
    return S3, derived_subgroup(S3.whole)


def klein_in_sym4():
    S4 = group("Sym(4)")
    return S4, normal_closure(S4, [S4.index_of(P("(0 1)(2 3)", 4))])


def alt5_in_sym3_alt5():
    prod = product("Sym(3)×Alt(5)")
    return prod.group, prod.embed(1)


class TestSchemes:
    def test_sym3_abelian(self):
        sch = x_maximal_classes(group("Sym(3)"), ABELIAN)
        assert sch.k == 2
        assert sorted(H.order for H in sch.class_reps) == [2, 3]
        assert sorted(sch.class_sizes) == [1, 3]

    def test_member_has_one_class(self):
        sch = x_maximal_classes(group("Sym(4)"), pi(2, 3))
        assert sch.k == 1 and sch.class_reps[0].order == 24

    def test_alt5_pi23(self):
        sch = x_maximal_classes(group("Alt(5)"), pi(2, 3))
        assert sorted(H.order for H in sch.class_reps) == [6, 12]

    @pytest.mark.parametrize("name", ["Sym(4)", "Alt(5)", "D(12)", "Sym(3)×Sym(3)", "Q(12)"])
    @pytest.mark.parametrize("primes", [(2,), (3,), (2, 3), (2, 5), (3, 5)])
    def test_pi_k_against_oracle(self, name, primes):
        G = group(name)
        member = lambda H: prime_divisors(len(H)) <= set(primes)
        assert k_x(G, pi(*primes)) == kx_bruteforce(G.elements, member)

    @pytest.mark.parametrize("name", ["Sym(4)", "Alt(5)", "D(12)", "Q(16)"])
    def test_abelian_k_against_oracle(self, name):
        G = group(name)
        assert k_x(G, ABELIAN) == kx_bruteforce(G.elements, is_abelian_set)

    @pytest.mark.parametrize("name", ["Sym(4)", "Alt(5)", "Sym(3)×Sym(3)", "D(20)"])
    @pytest.mark.parametrize("primes", [(2,), (2, 3), (2, 5), (3, 5)])
    def test_hall_count_against_oracle(self, name, primes):
        G = group(name)
        assert h_x(G, pi(*primes)) == hall_count_bruteforce(G.elements, set(primes))


class TestHallAndFlags:
    def test_member(self):
        G = group("Sym(4)")
        hd = hall_x_classes(G, pi(2, 3))
        assert hd.h == 1 and hd.class_reps[0] == G.whole
        assert class_flags(G, pi(2, 3)).to_json() == {"E": True, "C": True, "M": True, "D": True}

    def test_alt5_pi23(self):
        A5 = group("Alt(5)")
        assert h_x(A5, pi(2, 3)) == 1
        assert class_flags(A5, pi(2, 3)).to_json() == {"E": True, "C": True, "M": False, "D": False}

    def test_alt5_pi25(self):
        A5 = group("Alt(5)")
        assert h_x(A5, pi(2, 5)) == 0
        assert class_flags(A5, pi(2, 5)).to_json() == {"E": False, "C": False, "M": False, "D": False}

    @pytest.mark.parametrize("name", ["Sym(4)", "Alt(5)", "Sym(5)", "PSL(2,7)", "Sym(3)×Alt(5)"])
    def test_d_is_c_and_m(self, name):
        G = group(name)
        for X in (pi(2), pi(2, 3), pi(3, 5), spi(2, 3), parse_class("pi-separable", [2, 5])):
            f = class_flags(G, X)
            assert f.d_x == (f.c_x and f.m_x)


class TestSections:
    @pytest.mark.parametrize("name", ["Sym(4)", "Sym(3)×Sym(3)", "Alt(4)×Z(2)", "Sym(3)×Alt(5)", "D(24)"])
    def test_sectional_route_matches_materialized(self, name):
        G = group(name)
        lat = all_subgroups(G)
        for X in (pi(2), pi(3), pi(2, 3), spi(2, 3), parse_class("pi-separable", [3])):
            for i in lat.normal_indices():
                N = lat.subgroups[i]
                Q, _ = quotient_data(G, N)
                assert section_k(lat, lat.whole_index, i, X) == k_x(Q, X)
                assert section_k(lat, i, 0, X) == k_x(normal_as_group(N), X)

    def test_sectional_requires_complete_class(self):
        G, N = alt3_in_sym3()
        lat = all_subgroups(G)
        with pytest.raises(UsageError):
            section_k(lat, lat.whole_index, lat.find(N), ABELIAN)


class TestReductionCheck:
    def test_trivial_normal(self):
        G = group("Alt(5)")
        rep = reduction_check(G, G.trivial, pi(2, 3))
        assert rep.equality and rep.k_N == 1 and rep.scheme_bijection_ok
        assert not rep.violation

    @pytest.mark.parametrize("X", [ABELIAN, NILPOTENT])
    def test_non_complete_counterexample(self, X):
        G, N = alt3_in_sym3()
        rep = reduction_check(G, N, X)
        assert (rep.k_G, rep.k_quotient, rep.k_N) == (2, 1, 1)
        assert not rep.equality and not rep.theorem_consistent
        assert rep.cause == "class-not-complete"
        # the report must not call this a violation of the theorem
        assert not rep.violation

    def test_sym3_alt5(self):
        G, N = alt5_in_sym3_alt5()
        rep = reduction_check(G, N, pi(2, 3))
        assert (rep.k_G, rep.k_quotient, rep.k_N) == (2, 1, 2)
        assert not rep.equality and rep.theorem_consistent and rep.k_G > rep.k_quotient
        assert rep.to_json()["consistent"] and rep.to_json()["k_normal"] == 2

    @pytest.mark.parametrize("name", ["Sym(4)", "Sym(5)", "Alt(4)×Alt(3)", "Sym(3)×Sym(4)", "Q(8)×Z(3)"])
    def test_theorem_on_all_normal_subgroups(self, name):
        G = group(name)
        for X in (pi(2), pi(3), pi(2, 3), pi(2, 5), spi(2, 3), parse_class("pi-solvable", [2])):
            for N, _ in normal_subgroups(G):
                rep = reduction_check(G, N, X)
                assert not rep.violation, rep.to_json()
                if rep.equality:
                    assert maps_scheme_to_scheme(G, N, X)
                    assert proof_step_check(G, N, X) == []

    def test_rejects_non_normal(self):
        S3 = group("Sym(3)")
        with pytest.raises(UsageError):
            reduction_check(S3, subgroup_generated(S3, [P("(0 1)", 3)]), pi(2))


class TestRadical:
    def test_member(self):
        G = group("Sym(3)")
        assert d_x_radical(G, pi(2, 3)) == G.whole

    def test_alt5(self):
        assert d_x_radical(group("Alt(5)"), pi(2, 3)).order == 1

    def test_sym3_alt5(self):
        prod = product("Sym(3)×Alt(5)")
        R = d_x_radical(prod.group, pi(2, 3))
        assert R == prod.embed(0)

    @pytest.mark.parametrize("name", ["Sym(4)", "Sym(3)×Sym(3)", "Sym(5)", "Alt(3)×Alt(5)"])
    def test_routes_agree(self, name):
        for X in (pi(2), pi(2, 3), pi(3, 5), spi(2, 3)):
            rep = radical_analysis(group(name), X)
            assert rep.agree and rep.ok

    def test_full_reduction(self):
        Q, phi = full_reduction(product("Sym(3)×Alt(5)").group, pi(2, 3))
        assert are_isomorphic(Q, group("Alt(5)")) is not None
        assert phi.is_multiplicative()
        assert full_reduction(group("Sym(3)"), pi(2, 3))[0].order == 1
        A5 = group("Alt(5)")
        assert are_isomorphic(full_reduction(A5, pi(2, 3))[0], A5) is not None


class TestIsoschematisms:
    def test_trivial_kernel(self):
        G = group("Sym(4)")
        assert is_isoschematism(G, G.trivial, pi(2, 3))

    def test_sym4_klein(self):
        G, V = klein_in_sym4()
        assert is_isoschematism(G, V, pi(2))

    def test_sym3_alt5(self):
        G, N = alt5_in_sym3_alt5()
        assert not is_isoschematism(G, N, pi(2, 3))
        rep = isoschematism_analysis(G, N, pi(2, 3))
        assert rep.consistent and not rep.some

    def test_nonisomorphic_kernels_share_factors(self):
        # D(8) with X = 2-groups: every quotient is in X, so Z4 and Z2xZ2 both
        # serve as kernels onto Z2 and are not isomorphic
        G = group("D(8)")
        found = []
        for N, _ in normal_subgroups(G):
            if N.order == 4:
                rep = isoschematism_analysis(G, N, pi(2))
                assert rep.consistent and rep.kernel_factors_agree
                found += rep.kernel_witnesses
        assert found

    def test_equivalence_examples(self):
        X = pi(2, 3)
        S4 = group("Sym(4)")
        assert isoschematic_equivalent(S4, S4, X)
        assert isoschematic_equivalent(group("Sym(3)"), group("Z(1)"), X)
        assert isoschematic_equivalent(product("Sym(3)×Alt(5)").group, group("Alt(5)"), X)
        assert not isoschematic_equivalent(group("Alt(5)"), group("Sym(3)"), X)

    def test_common_image_witness(self):
        X = pi(2, 3)
        A, B = common_image_witness(product("Sym(3)×Alt(5)").group, group("Alt(5)"), X)
        assert A.order == 6 and B.order == 1


class TestOvergroupsLiftingHall:
    def test_overgroup_trivial_normal(self):
        G = group("Sym(4)")
        rep = overgroup_criterion_check(G, G.trivial, pi(2))
        assert rep.lhs and rep.rhs and rep.overgroups > 0

    def test_overgroup_sym3_alt5(self):
        G, N = alt5_in_sym3_alt5()
        rep = overgroup_criterion_check(G, N, pi(2, 3))
        assert not rep.lhs and rep.consistent and rep.violators

    def test_lift_trivial(self):
        G, V = klein_in_sym4()
        Q, phi = quotient_by(G, V)
        assert lift_x_subgroup(phi, Q.trivial, pi(3)).order == 1

    def test_lift_sylow3(self):
        G, V = klein_in_sym4()
        Q, phi = quotient_by(G, V)
        K = next(H for H in all_subgroups(Q).subgroups if H.order == 3)
        H = lift_x_subgroup(phi, K, pi(3))
        assert H.order == 3 and phi.image(H) == K

    def test_lift_sym3_quotient(self):
        G, N = alt3_in_sym3()
        Q, phi = quotient_by(G, N)
        H = lift_x_subgroup(phi, Q.whole, pi(2))
        assert H.order == 2 and phi.image(H) == Q.whole

    def test_lift_rejects_non_member(self):
        G, V = klein_in_sym4()
        Q, phi = quotient_by(G, V)
        with pytest.raises(UsageError):
            lift_x_subgroup(phi, Q.whole, pi(3))

    def test_hall_member(self):
        G, V = klein_in_sym4()
        assert hall_inheritance_check(G, V, pi(2, 3)).ok

    def test_hall_sym5(self):
        S5 = group("Sym(5)")
        A5 = derived_subgroup(S5.whole)
        rep = hall_inheritance_check(S5, A5, pi(2, 3))
        assert rep.ok and rep.halls == 1
        H = hall_x_classes(S5, pi(2, 3)).class_reps[0]
        assert H.order == 24 and intersection(H, A5).order == 12

    def test_hall_separable(self):
        G, V = klein_in_sym4()
        rep = hall_inheritance_check(G, V, pi(3))
        assert rep.separable and rep.k_equal and rep.ok
        assert k_x(G, pi(3)) == k_x(quotient_by(G, V)[0], pi(3)) == 1


class TestFrattiniAndAut:
    def test_sym5_z5(self):
        prod = product("Sym(5)×Z(5)")
        G = prod.group
        A = prod.embed(0)
        N = derived_subgroup(A)
        L = frattini_witness(G, A, N, pi(2, 3))
        assert L.order == 24 and L <= A

    def test_a_equals_g(self):
        S5 = group("Sym(5)")
        L = frattini_witness(S5, S5.whole, derived_subgroup(S5.whole), pi(2, 3))
        assert L.order == 24

    def test_hypotheses(self):
        S4 = group("Sym(4)")
        _, V = klein_in_sym4()
        with pytest.raises(HypothesisFailure):
            frattini_witness(S4, S4.whole, V, pi(2, 3))

    def test_simple_direct_factors(self):
        G = group("Alt(3)×Alt(5)")
        assert simple_direct_factors(G.whole) is None
        A5 = product("Alt(3)×Alt(5)").embed(1)
        assert [S.order for S in simple_direct_factors(A5)] == [60]

    def test_aut_product(self):
        S5 = group("Sym(5)")
        A5 = derived_subgroup(S5.whole)
        K = hall_x_classes(S5, pi(2, 3)).class_reps[0]
        assert aut_product_check(S5, A5, A5, K).ok


# [DERIVED] regression anchors from the verified survey run
SURVEY_ANCHORS = {
    "Alt(5)": {(2, 3): (1, 1), (2, 3, 5): (1, 0), (2,): (1, 1), (3,): (1, 1), (5,): (1, 1), (2, 5): (0, 0)},
    "PSL(2,7)": {(2, 3): (2, 2), (3, 7): (1, 1), (2, 3, 7): (1, 0)},
    "Alt(6)": {(2,): (1, 1), (3,): (1, 1), (5,): (1, 1), (2, 3, 5): (1, 0)},
    "PSL(2,8)": {(2, 7): (1, 1), (2, 3, 7): (1, 0)},
    "PSL(2,11)": {(2, 3): (2, 2), (5, 11): (1, 1), (2, 3, 5): (2, 0), (2, 3, 5, 11): (1, 0)},
}


@pytest.mark.parametrize("name", sorted(SURVEY_ANCHORS))
def test_class_number_survey(name):
    table = simple_class_number_survey(group(name))
    assert not table.violations
    got = {r.primes: (r.h, r.h_solvable) for r in table.rows}
    for primes, expected in SURVEY_ANCHORS[name].items():
        assert got[primes] == expected
    for r in table.rows:
        if r.hall_exists:
            assert r.h in LEMMA6_VALUES
            if 2 not in r.primes:
                assert r.h == 1
            if 3 not in r.primes:
                assert r.h <= 2


def test_survey_rejects_non_simple():
    with pytest.raises(UsageError):
        simple_class_number_survey(group("Sym(4)"))
