"""X-maximal and X-Hall subgroups, class numbers and the reduction checks.

Conventions: k_X(G) is the number of conjugacy classes of X-maximal
subgroups, h_X(G) the number of classes of X-Hall subgroups (X-subgroups
whose index is divisible by no prime of pi(X)).  Quotients are always
materialized through the coset action, so k_X(G/N) is computed on an
honest permutation group; a sectional route that works inside the lattice
of G is provided for large sweeps and as a cross-check.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import sympy

from .classes import GroupClassDescriptor, is_x_separable, require_complete
from .errors import HypothesisFailure, TheoremViolation, UsageError
from .lattice import SubgroupLattice, all_subgroups, are_isomorphic, composition_factors
from .perm import (
    Epimorphism, PermutationGroup, Subgroup, _small_generating_set,
    induced_automorphism_group, intersection, is_normal, join, normalizer,
    quotient_by,
)

LEMMA6_VALUES = frozenset({1, 2, 3, 4, 9})


# --------------------------------------------------------------------------
# schemes


@dataclass
class XScheme:
    group: PermutationGroup
    cls: GroupClassDescriptor
    class_reps: list[Subgroup]
    class_sizes: list[int]
    class_ids: list[int] = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.class_reps)


@dataclass
class HallData:
    group: PermutationGroup
    cls: GroupClassDescriptor
    class_reps: list[Subgroup]
    class_sizes: list[int]
    class_ids: list[int] = field(repr=False)

    @property
    def h(self) -> int:
        return len(self.class_reps)


@dataclass(frozen=True)
class ClassFlags:
    e_x: bool
    c_x: bool
    m_x: bool
    d_x: bool

    def to_json(self) -> dict:
        return {"E": self.e_x, "C": self.c_x, "M": self.m_x, "D": self.d_x}


def _cache(G: PermutationGroup, name: str) -> dict:
    return G.__dict__.setdefault(name, {})


def _x_class_ids(lat: SubgroupLattice, X: GroupClassDescriptor) -> list[int]:
    return [c for c in range(lat.num_classes) if X.contains_profile(lat.class_profile(c))]


def _maximal_ids(lat: SubgroupLattice, X: GroupClassDescriptor) -> list[int]:
    xs = set(_x_class_ids(lat, X))
    return [c for c in sorted(xs) if not (lat.overgroup_classes(c) & xs)]


def _pi_free(X: GroupClassDescriptor, n: int) -> bool:
    return not any(X.covers(p) for p in sympy.primefactors(n))


def _hall_ids(lat: SubgroupLattice, X: GroupClassDescriptor) -> list[int]:
    n = lat.ambient.order
    return [c for c in _x_class_ids(lat, X) if _pi_free(X, n // lat.rep(c).order)]


def _listing(lat: SubgroupLattice, ids: Iterable[int]) -> list[int]:
    # order descending, then canonical form
    return sorted(ids, key=lambda c: (-lat.rep(c).order, lat.rep(c).canonical()))


def x_maximal_classes(G: PermutationGroup, X: GroupClassDescriptor) -> XScheme:
    cache = _cache(G, "_schemes")
    if X not in cache:
        lat = all_subgroups(G)
        ids = _listing(lat, _maximal_ids(lat, X))
        cache[X] = XScheme(G, X, [lat.rep(c) for c in ids], [lat.class_size(c) for c in ids], ids)
    return cache[X]


def k_x(G: PermutationGroup, X: GroupClassDescriptor) -> int:
    return x_maximal_classes(G, X).k


def hall_x_classes(G: PermutationGroup, X: GroupClassDescriptor) -> HallData:
    cache = _cache(G, "_halls")
    if X not in cache:
        lat = all_subgroups(G)
        ids = _listing(lat, _hall_ids(lat, X))
        maximal = set(_maximal_ids(lat, X))
        stray = [c for c in ids if c not in maximal]
        if stray:
            raise TheoremViolation(f"Hall subgroup of order {lat.rep(stray[0]).order} in {G!r} "
                                   f"is not X-maximal for {X}")
        cache[X] = HallData(G, X, [lat.rep(c) for c in ids], [lat.class_size(c) for c in ids], ids)
    return cache[X]


def h_x(G: PermutationGroup, X: GroupClassDescriptor) -> int:
    return hall_x_classes(G, X).h


def class_flags(G: PermutationGroup, X: GroupClassDescriptor) -> ClassFlags:
    scheme = x_maximal_classes(G, X)
    hall = hall_x_classes(G, X)
    flags = ClassFlags(
        e_x=hall.h >= 1,
        c_x=hall.h == 1,
        m_x=set(scheme.class_ids) == set(hall.class_ids),
        d_x=scheme.k == 1,
    )
    if X.complete and flags.d_x != (flags.c_x and flags.m_x):
        raise TheoremViolation(f"D != C and M for {G!r} over {X}: {flags}")
    return flags


# --------------------------------------------------------------------------
# quotients and sections


def quotient_data(G: PermutationGroup, N: Subgroup) -> tuple[PermutationGroup, Epimorphism]:
    """G/N with its canonical epimorphism, cached per normal subgroup."""
    cache = _cache(G, "_quotients")
    if N.key not in cache:
        cache[N.key] = quotient_by(G, N)
    return cache[N.key]


def normal_as_group(N: Subgroup) -> PermutationGroup:
    if not N.gens and N.order > 1:
        N.gens = _small_generating_set(N.ambient, N.elements)
    return N.as_group()


def section_k(lat: SubgroupLattice, top: int, bottom: int, X: GroupClassDescriptor) -> int:
    """k_X(L_top / L_bottom) computed inside the lattice of the ambient group.

    Subgroups of the section are the L with bottom <= L <= top; X-membership
    of L/bottom follows from the composition factors of L minus those of
    bottom (complete classes only); conjugacy in the section is conjugacy
    under L_top.
    """
    trivial_bottom = lat.orders[bottom] == 1
    if not trivial_bottom:
        require_complete(X)
        base = Counter(lat.profile_of(bottom).factors)
    cands = [j for j in lat.sub_indices(top) if lat.includes(bottom, j)]
    xs = []
    for j in cands:
        if trivial_bottom:
            ok = X.contains_profile(lat.profile_of(j))
        else:
            ok = X.contains_factors((Counter(lat.profile_of(j).factors) - base).elements())
        if ok:
            xs.append(j)
    xs.sort(key=lambda j: -lat.orders[j])
    maximal: list[int] = []
    for j in xs:
        if not any(lat.includes(j, m) for m in maximal):
            maximal.append(j)
    labels = lat.internal_classes(top)
    return len({labels[j] for j in maximal})


# --------------------------------------------------------------------------
# Theorem 1 and statement (2)


@dataclass
class ReductionReport:
    group: str
    class_spec: str
    normal_order: int
    k_G: int
    k_quotient: int
    k_N: int
    equality: bool
    theorem_consistent: bool
    scheme_bijection_ok: bool | None
    image_containment_ok: bool
    monotone_ok: bool
    complete: bool
    cause: str | None = None
    witnesses: list[str] = field(default_factory=list)

    @property
    def violation(self) -> bool:
        """A failure of a statement that must hold for complete classes."""
        if not self.complete:
            return False
        return not (self.theorem_consistent and self.image_containment_ok and self.monotone_ok
                    and self.scheme_bijection_ok is not False)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "class_spec": self.class_spec,
            "normal_order": self.normal_order,
            "k_G": self.k_G,
            "k_quotient": self.k_quotient,
            "k_normal": self.k_N,
            "equality": self.equality,
            "consistent": self.theorem_consistent,
            "scheme_bijection_ok": self.scheme_bijection_ok,
            "image_containment_ok": self.image_containment_ok,
            "monotone_ok": self.monotone_ok,
            "complete": self.complete,
            "cause": self.cause,
            "violation": self.violation,
            "witnesses": self.witnesses,
        }


def _image_classes(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> list[int]:
    """Quotient-lattice class of HN/N for each scheme representative H of G."""
    Q, phi = quotient_data(G, N)
    latq = all_subgroups(Q)
    return [latq.class_of[latq.find(phi.image(H))] for H in x_maximal_classes(G, X).class_reps]


def maps_scheme_to_scheme(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> bool:
    """Whether the canonical map G -> G/N carries an X-scheme onto an X-scheme."""
    Q, _ = quotient_data(G, N)
    imgs = _image_classes(G, N, X)
    target = set(x_maximal_classes(Q, X).class_ids)
    return len(set(imgs)) == len(imgs) and set(imgs) == target


def reduction_check(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> ReductionReport:
    if N.ambient is not G:
        raise UsageError("N is not a subgroup of G")
    if not is_normal(N):
        raise UsageError("N is not normal in G")
    Q, phi = quotient_data(G, N)
    kG, kQ, kN = k_x(G, X), k_x(Q, X), k_x(normal_as_group(N), X)
    equality = kG == kQ
    consistent = equality == (kN == 1)
    imgs = _image_classes(G, N, X)
    target = set(x_maximal_classes(Q, X).class_ids)
    containment = target <= set(imgs)
    bijection = (len(set(imgs)) == len(imgs) and set(imgs) == target) if equality else None
    report = ReductionReport(
        group=G.name or repr(G), class_spec=X.label, normal_order=N.order,
        k_G=kG, k_quotient=kQ, k_N=kN, equality=equality,
        theorem_consistent=consistent, scheme_bijection_ok=bijection,
        image_containment_ok=containment, monotone_ok=kQ <= kG, complete=X.complete,
    )
    if not consistent:
        report.cause = "theorem-violation" if X.complete else "class-not-complete"
        report.witnesses.append(f"k_X(G)={kG}, k_X(G/N)={kQ}, k_X(N)={kN}")
    if bijection is False:
        report.witnesses.append("scheme images are not a scheme of G/N")
    if not containment:
        report.witnesses.append("some X-maximal subgroup of G/N is not an image")
    return report


def proof_step_check(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> list[str]:
    """Consequences of k_X(G) = k_X(G/N) used in the proof of the reduction theorem.

    For K in m_X(G): K n N is X-Hall in N and K is X-Hall in KN; every
    X-subgroup of G normalizes some X-Hall subgroup of N; m_X(N) = Hall_X(N).
    Only meaningful (and only asserted) when the k-values are equal.
    """
    require_complete(X)
    lat = all_subgroups(G)
    problems = []
    n_order = N.order
    ni = lat.find(N)
    for K in x_maximal_classes(G, X).class_reps:
        KN = intersection(K, N)
        if not X.contains(KN) or not _pi_free(X, n_order // KN.order):
            problems.append(f"K of order {K.order}: K n N (order {KN.order}) is not X-Hall in N")
    halls_n = [j for j in lat.sub_indices(ni)
               if X.contains_profile(lat.profile_of(j)) and _pi_free(X, n_order // int(lat.orders[j]))]
    masks = [lat.subgroups[j] for j in halls_n]
    for c in _x_class_ids(lat, X):
        U = lat.rep(c)
        maps = [G.conj_map(g) for g in U.gens]
        if not any(all(_preserves(m, V) for m in maps) for V in masks):
            problems.append(f"X-subgroup of order {U.order} normalizes no X-Hall subgroup of N")
    if not class_flags(normal_as_group(N), X).m_x:
        problems.append("N is not in M_X")
    return problems


def _preserves(m, V: Subgroup) -> bool:
    return all(V.key >> int(m[g]) & 1 for g in V.gens)


# --------------------------------------------------------------------------
# radical and full reduction


@dataclass
class PairRow:
    normal: Subgroup
    k_quotient: int
    k_normal: int

    def to_json(self, kG: int) -> dict:
        eq = self.k_quotient == kG
        return {"normal_order": self.normal.order, "k_quotient": self.k_quotient,
                "k_normal": self.k_normal, "equality": eq,
                "consistent": eq == (self.k_normal == 1)}


@dataclass
class RadicalReport:
    group: PermutationGroup
    cls: GroupClassDescriptor
    k: int
    rows: list[PairRow]
    route_a: Subgroup
    route_b: Subgroup
    cor3_i: bool
    cor3_ii: bool
    cor3_iii: bool | None

    @property
    def agree(self) -> bool:
        return self.route_a == self.route_b

    @property
    def ok(self) -> bool:
        return self.agree and self.cor3_i and self.cor3_ii and self.cor3_iii is not False


def _join_all(G: PermutationGroup, subs: Iterable[Subgroup]) -> Subgroup:
    R = G.trivial
    for N in subs:
        R = join(R, N.gens if N.gens else N.elements.tolist())
    return R


def normal_pair_rows(G: PermutationGroup, X: GroupClassDescriptor) -> list[PairRow]:
    cache = _cache(G, "_pair_rows")
    if X not in cache:
        lat = all_subgroups(G)
        rows = []
        for i in lat.normal_indices():
            N = lat.subgroups[i]
            Q, _ = quotient_data(G, N)
            rows.append(PairRow(N, k_x(Q, X), k_x(normal_as_group(N), X)))
        cache[X] = rows
    return cache[X]


def _route_a_trivial(G: PermutationGroup, X: GroupClassDescriptor) -> bool:
    kG = k_x(G, X)
    return all(r.normal.order == 1 or r.k_quotient != kG for r in normal_pair_rows(G, X))


def radical_analysis(G: PermutationGroup, X: GroupClassDescriptor, deep: bool = True) -> RadicalReport:
    """Both constructions of the radical plus the radical's listed properties.

    ``deep`` also checks that G/R has trivial radical, which needs the
    lattices of all quotients of G/R.
    """
    kG = k_x(G, X)
    rows = normal_pair_rows(G, X)
    ra = _join_all(G, [r.normal for r in rows if r.k_quotient == kG])
    rb = _join_all(G, [r.normal for r in rows if r.k_normal == 1])
    QR, _ = quotient_data(G, ra)
    cor_i = k_x(QR, X) == kG
    cor_ii = all(r.k_quotient == kG for r in rows if r.normal <= ra)
    cor_iii = _route_a_trivial(QR, X) if deep else None
    return RadicalReport(G, X, kG, rows, ra, rb, cor_i, cor_ii, cor_iii)


def d_x_radical(G: PermutationGroup, X: GroupClassDescriptor) -> Subgroup:
    """Largest normal R with k_X(G) = k_X(G/R), cross-checked two ways."""
    rep = radical_analysis(G, X)
    if X.complete and not rep.ok:
        raise TheoremViolation(
            f"radical check failed for {G!r} over {X}: routes agree={rep.agree}, "
            f"(i)={rep.cor3_i}, (ii)={rep.cor3_ii}, (iii)={rep.cor3_iii}")
    return rep.route_a


def full_reduction(G: PermutationGroup, X: GroupClassDescriptor) -> tuple[PermutationGroup, Epimorphism]:
    R = d_x_radical(G, X)
    Q, phi = quotient_data(G, R)
    if X.complete and not _route_a_trivial(Q, X):
        raise TheoremViolation(f"full reduction of {G!r} over {X} is not fully reduced")
    return Q, phi


# --------------------------------------------------------------------------
# isoschematisms


@dataclass
class IsoschematismReport:
    k_equal: bool                    # k_X(G) = k_X(G/N)
    canonical: bool                  # canonical map carries a scheme to a scheme
    kernels: list[tuple[Subgroup, bool]]   # every M with G/M isomorphic to G/N
    kernel_witnesses: list[tuple[int, int]] = field(default_factory=list)
    # non-isomorphic kernels are still expected to share composition factors
    kernel_factors_agree: bool = True

    @property
    def some(self) -> bool:
        return any(ok for _, ok in self.kernels)

    @property
    def every(self) -> bool:
        return all(ok for _, ok in self.kernels)

    @property
    def consistent(self) -> bool:
        return self.some == self.every == self.k_equal == self.canonical


def isoschematism_analysis(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> IsoschematismReport:
    """Three readings of "G -> G/N is an X-isoschematism", compared.

    Epimorphisms onto a fixed image G* are isomorphisms composed with
    canonical maps G -> G/M, one for each normal M with G/M isomorphic to
    G*; being an isoschematism is invariant under the isomorphism, so the
    kernels enumerate all epimorphisms up to that ambiguity.
    """
    if not is_normal(N):
        raise UsageError("N is not normal in G")
    lat = all_subgroups(G)
    Q, _ = quotient_data(G, N)
    kernels = []
    for i in lat.normal_indices():
        M = lat.subgroups[i]
        if M.order != N.order:
            continue
        QM, _ = quotient_data(G, M)
        if M != N and are_isomorphic(QM, Q) is None:
            continue
        kernels.append((M, maps_scheme_to_scheme(G, M, X)))
    rep = IsoschematismReport(
        k_equal=k_x(G, X) == k_x(Q, X),
        canonical=maps_scheme_to_scheme(G, N, X),
        kernels=kernels,
    )
    good = [M for M, ok in kernels if ok]
    for a in range(len(good)):
        for b in range(a + 1, len(good)):
            if are_isomorphic(normal_as_group(good[a]), normal_as_group(good[b])) is None:
                rep.kernel_witnesses.append((lat.find(good[a]), lat.find(good[b])))
                if composition_factors(good[a]) != composition_factors(good[b]):
                    rep.kernel_factors_agree = False
    return rep


def is_isoschematism(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> bool:
    rep = isoschematism_analysis(G, N, X)
    if X.complete and not rep.consistent:
        raise TheoremViolation(f"isoschematism readings disagree for {G!r}, |N|={N.order}, {X}")
    return rep.k_equal


def isoschematic_equivalent(G1: PermutationGroup, G2: PermutationGroup, X: GroupClassDescriptor) -> bool:
    Q1, _ = full_reduction(G1, X)
    Q2, _ = full_reduction(G2, X)
    return are_isomorphic(Q1, Q2) is not None


def common_image_witness(G1: PermutationGroup, G2: PermutationGroup, X: GroupClassDescriptor):
    """Normal N1, N2 with G1/N1 isomorphic to G2/N2, both isoschematisms; or None.

    The definitional reading of the equivalence, independent of radicals.
    """
    rows1 = [r.normal for r in normal_pair_rows(G1, X) if r.k_quotient == k_x(G1, X)]
    rows2 = [r.normal for r in normal_pair_rows(G2, X) if r.k_quotient == k_x(G2, X)]
    for A in rows1:
        QA, _ = quotient_data(G1, A)
        for B in rows2:
            QB, _ = quotient_data(G2, B)
            if QA.order == QB.order and are_isomorphic(QA, QB) is not None:
                return A, B
    return None


# --------------------------------------------------------------------------
# overgroups, lifting, Hall inheritance


@dataclass
class OvergroupReport:
    lhs: bool                          # k_X(G) = k_X(G/N)
    rhs: bool                          # equality for every K in om_X(G)
    overgroups: int
    violators: list[int] = field(default_factory=list)   # orders of failing K

    @property
    def consistent(self) -> bool:
        return self.lhs == self.rhs


def overgroup_indices(G: PermutationGroup, X: GroupClassDescriptor) -> list[int]:
    """Class representatives of om_X(G), as lattice indices."""
    lat = all_subgroups(G)
    members = [j for c in x_maximal_classes(G, X).class_ids for j in lat.classes[c]]
    out = []
    for c in range(lat.num_classes):
        K = lat.rep_index(c)
        if any(lat.includes(j, K) for j in members):
            out.append(K)
    return out


def overgroup_criterion_check(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> OvergroupReport:
    require_complete(X)
    if not is_normal(N):
        raise UsageError("N is not normal in G")
    lat = all_subgroups(G)
    Q, _ = quotient_data(G, N)
    lhs = k_x(G, X) == k_x(Q, X)
    rep = OvergroupReport(lhs=lhs, rhs=True, overgroups=0)
    for K in overgroup_indices(G, X):
        rep.overgroups += 1
        KN = intersection(lat.subgroups[K], N)
        b = lat.find(KN)
        if section_k(lat, K, 0, X) != section_k(lat, K, b, X):
            rep.rhs = False
            rep.violators.append(int(lat.orders[K]))
    return rep


def lift_x_subgroup(phi: Epimorphism, K: Subgroup, X: GroupClassDescriptor) -> Subgroup:
    """An X-subgroup H of the domain with image K (K in X); X-maximal in the preimage."""
    if K.ambient is not phi.codomain:
        raise UsageError("K is not a subgroup of the codomain")
    if not X.contains(K):
        raise UsageError(f"K is not an X-subgroup for {X}")
    G = phi.domain
    if K.order == 1:
        return G.trivial
    lat = all_subgroups(G)
    P = lat.find(phi.preimage(K))
    xs = [j for j in lat.sub_indices(P) if X.contains_profile(lat.profile_of(j))]
    xs.sort(key=lambda j: (-lat.orders[j], lat.subgroups[j].canonical()))
    maximal: list[int] = []
    for j in xs:
        if not any(lat.includes(j, m) for m in maximal):
            maximal.append(j)
    for j in maximal:
        H = lat.subgroups[j]
        if phi.image(H) == K:
            return H
    raise TheoremViolation(f"no X-subgroup lifts a subgroup of order {K.order} for {X}")


@dataclass
class HallInheritanceReport:
    halls: int
    separable: bool
    k_equal: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def hall_inheritance_check(G: PermutationGroup, N: Subgroup, X: GroupClassDescriptor) -> HallInheritanceReport:
    require_complete(X)
    if not is_normal(N):
        raise UsageError("N is not normal in G")
    Q, phi = quotient_data(G, N)
    halls = hall_x_classes(G, X).class_reps
    problems = []
    for H in halls:
        HN = intersection(H, N)
        if not (X.contains(HN) and _pi_free(X, N.order // HN.order)):
            problems.append(f"H n N of order {HN.order} is not X-Hall in N")
        img = phi.image(H)
        if not (X.contains(img) and _pi_free(X, Q.order // img.order)):
            problems.append(f"HN/N of order {img.order} is not X-Hall in G/N")
    sep = is_x_separable(normal_as_group(N), X) if N.order > 1 else True
    k_equal = k_x(G, X) == k_x(Q, X)
    if sep and not k_equal:
        problems.append("N is X-separable but k_X(G) != k_X(G/N)")
    return HallInheritanceReport(len(halls), sep, k_equal, problems)


# --------------------------------------------------------------------------
# Frattini-type witness and Aut identities


def simple_direct_factors(N: Subgroup) -> list[Subgroup] | None:
    """The simple direct factors of N if N is a direct product of nonabelian simple groups."""
    if N.order == 1:
        return None
    G = N.ambient
    lat = all_subgroups(G)
    ni = lat.find(N)
    normals = [j for j in lat.normal_within(ni) if 1 < lat.orders[j]]
    minimal = [j for j in normals if not any(k != j and lat.includes(k, j) for k in normals)]
    factors = []
    prod = 1
    for j in minimal:
        prof = lat.profile_of(j)
        if len(prof.factors) != 1 or prof.factors[0].abelian:
            return None
        factors.append(lat.subgroups[j])
        prod *= int(lat.orders[j])
    if prod != N.order or _join_all(G, factors) != N:
        return None
    return factors


def frattini_witness(G: PermutationGroup, A: Subgroup, N: Subgroup, X: GroupClassDescriptor) -> Subgroup:
    """L in Hall_X(A) with A N_G(L) = G."""
    require_complete(X)
    if not is_normal(A):
        raise HypothesisFailure("A is not normal in G")
    if not is_normal(N):
        raise HypothesisFailure("N is not normal in G")
    if not N <= A:
        raise HypothesisFailure("N is not contained in A")
    if simple_direct_factors(N) is None:
        raise HypothesisFailure("N is not a direct product of nonabelian simple groups")
    halls = hall_x_classes(G, X).class_reps
    if not any(K <= A and K.order * N.order // intersection(K, N).order == A.order for K in halls):
        raise HypothesisFailure("A is not KN for an X-Hall subgroup K of G")
    lat = all_subgroups(G)
    ai = lat.find(A)
    cands = [j for j in lat.sub_indices(ai)
             if X.contains_profile(lat.profile_of(j)) and _pi_free(X, A.order // int(lat.orders[j]))]
    cands.sort(key=lambda j: lat.subgroups[j].canonical())
    for j in cands:
        L = lat.subgroups[j]
        NL = normalizer(G, L)
        if A.order * NL.order // intersection(A, NL).order == G.order:
            return L
    raise TheoremViolation(f"no L in Hall_X(A) with A N_G(L) = G ({G!r}, |A|={A.order}, {X})")


@dataclass
class Lemma5Report:
    normalizer_ok: bool
    aut_ok: bool

    @property
    def ok(self) -> bool:
        return self.normalizer_ok and self.aut_ok


def aut_product_check(G: PermutationGroup, N: Subgroup, S: Subgroup, K: Subgroup) -> Lemma5Report:
    """N_G(S) = N N_K(S) and Aut_G(S) = Inn(S) Aut_K(S) for G = KN, S a simple factor of N."""
    factors = simple_direct_factors(N)
    if factors is None or S not in factors:
        raise HypothesisFailure("S is not a simple direct factor of N")
    if K.order * N.order // intersection(K, N).order != G.order:
        raise HypothesisFailure("G is not KN")
    NG = normalizer(G, S)
    NK = intersection(K, NG)
    prod = join(N, NK.gens)
    normalizer_ok = prod == NG
    autG = induced_automorphism_group(G.whole, S)
    inn = induced_automorphism_group(S, S)
    autK = induced_automorphism_group(K, S)
    gens = list(inn._gens) + list(autK._gens)
    both = PermutationGroup(gens, S.order) if gens else PermutationGroup([], S.order)
    aut_ok = both.order == autG.order and all(autG.contains(g) for g in gens)
    return Lemma5Report(normalizer_ok, aut_ok)


# --------------------------------------------------------------------------
# class numbers of simple groups


@dataclass
class SurveyRow:
    primes: tuple[int, ...]
    hall_exists: bool
    h: int
    h_solvable: int
    ok: bool


@dataclass
class SurveyTable:
    group: str
    rows: list[SurveyRow]

    @property
    def violations(self) -> list[SurveyRow]:
        return [r for r in self.rows if not r.ok]


def _lemma7_values(primes: frozenset[int]) -> frozenset[int]:
    if 2 not in primes:
        return frozenset({0, 1})
    if 3 not in primes:
        return frozenset({0, 1, 2})
    return frozenset({0, 1, 2, 3, 4, 9})


def simple_class_number_survey(S: PermutationGroup) -> SurveyTable:
    """h_pi(S) for every nonempty pi contained in pi(S), with the expected value sets."""
    from itertools import combinations
    from .lattice import structure_predicates
    if not structure_predicates(S).simple:
        raise UsageError(f"{S!r} is not simple")
    ps = sorted(sympy.primefactors(S.order))
    rows = []
    for r in range(1, len(ps) + 1):
        for sub in combinations(ps, r):
            pi = frozenset(sub)
            h = h_x(S, GroupClassDescriptor("pi", pi))
            hs = h_x(S, GroupClassDescriptor("solvable-pi", pi))
            ok = True
            if h >= 1:
                ok &= h in LEMMA6_VALUES
                if 2 not in pi:
                    ok &= h == 1
                if 3 not in pi:
                    ok &= h <= 2
            ok &= hs in _lemma7_values(pi) and hs <= h
            rows.append(SurveyRow(sub, h >= 1, h, hs, bool(ok)))
    return SurveyTable(S.name or repr(S), rows)
