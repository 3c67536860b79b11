import pytest

from relmax.catalog import (
    STANDARD_NAMES, build_group, canonical_name, catalog, declared_order,
    identify, resolve_normal,
)
from relmax.errors import UsageError
from relmax.lattice import are_isomorphic
from relmax.perm import derived_subgroup, is_normal, quotient_by

from conftest import group, product


def test_examples():
    assert build_group("Z(1)").order == 1
    G = build_group("PSL(2,7)")
    assert G.order == 168 and G.degree == 8
    assert build_group("Sym(3)×Alt(5)").order == 360


def test_alternate_spellings():
    assert canonical_name("S(3)xA(5)") == canonical_name("Sym(3)×Alt(5)")
    assert build_group("C(6)").order == 6


@pytest.mark.parametrize("name", STANDARD_NAMES)
def test_declared_orders(name):
    G = group(name)
    assert G.order == declared_order(name) == len(G.elements)


@pytest.mark.parametrize("q", [5, 7, 8, 11])
def test_psl_is_derived_subgroup_of_pgl(q):
    PGL = build_group(f"PGL(2,{q})")
    PSL = build_group(f"PSL(2,{q})")
    D = derived_subgroup(PGL.whole)
    assert PSL.degree == PGL.degree == q + 1
    assert {PGL.elements[i] for i in D.elements} == set(PSL.elements)


@pytest.mark.parametrize("name", ["PSL(2,7)", "Q(12)", "Sym(3)×Z(3)", "D(20)"])
def test_builds_are_deterministic(name):
    a, b = build_group(name), build_group(name)
    assert a._gens == b._gens
    assert are_isomorphic(a, b) is not None


def test_identify():
    assert identify(build_group("PGL(2,5)")) == "Sym(5)"
    # first standard name of the isomorphism type
    assert identify(build_group("Sym(3)")) == "D(6)"
    assert identify(build_group("Sym(4)").whole.as_group()) == "Sym(4)"


@pytest.mark.parametrize("bad", ["Foo(3)", "Sym(x)", "PSL(2,6)", "D(7)", "Q(6)", ""])
def test_bad_names(bad):
    with pytest.raises(UsageError):
        build_group(bad)


def test_catalog_entries():
    entries = catalog()
    assert [e.name for e in entries] == list(STANDARD_NAMES)
    assert all(e.order == declared_order(e.name) for e in entries)


class TestResolveNormal:
    def test_factorwise(self):
        prod = product("Sym(3)×Alt(5)")
        N = resolve_normal(prod, "1×Alt(5)")
        assert N.order == 60 and is_normal(N)
        Q, _ = quotient_by(prod.group, N)
        assert are_isomorphic(Q, group("Sym(3)")) is not None
        assert resolve_normal(prod, "Alt(3)×1").order == 3

    def test_whole_single_factor(self):
        prod = product("Sym(4)")
        assert resolve_normal(prod, "Alt(4)").order == 12
        assert resolve_normal(prod, "Z(2)×Z(2)").order == 4

    def test_ambiguous(self):
        # two normal subgroups of type Z(3) with different quotients
        with pytest.raises(UsageError, match="ambiguous"):
            resolve_normal(product("Alt(3)×Alt(3)"), "Z(3)")

    def test_missing(self):
        with pytest.raises(UsageError):
            resolve_normal(product("Sym(4)"), "Z(3)")

    def test_component_mismatch(self):
        with pytest.raises(UsageError):
            resolve_normal(product("Z(2)×Z(2)×Z(2)"), "1×1")
