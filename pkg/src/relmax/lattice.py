"""Subgroup lattices, composition factors, structure predicates, isomorphism.

The lattice is built by extending conjugacy-class representatives with
cyclic subgroups until no new class appears; every class is then expanded
to its full conjugation orbit.  Any subgroup is reached from the trivial
group by a chain H_0 < H_1 < ... in which each step adjoins one element,
and a conjugate of each step is produced from a class representative, so
the enumeration is complete.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy

from . import kernels
from .config import CAPS
from .errors import CapExceeded
from .perm import (
    Permutation, PermutationGroup, Subgroup, _key, _small_generating_set,
    derived_subgroup, is_normal, join, normal_closure, quotient_by,
)

# nonabelian simple groups of order below 10^4, keyed by order; no two of
# them share an order
_SIMPLE_BY_ORDER = {
    60: ("alternating-5", "Alt(5)"),
    168: ("linear-psl", "PSL(2,7)"),
    360: ("alternating-6", "Alt(6)"),
    504: ("linear-psl", "PSL(2,8)"),
    660: ("linear-psl", "PSL(2,11)"),
    1092: ("linear-psl", "PSL(2,13)"),
    2448: ("linear-psl", "PSL(2,17)"),
    2520: ("alternating-7", "Alt(7)"),
    3420: ("linear-psl", "PSL(2,19)"),
    4080: ("linear-psl", "PSL(2,16)"),
    5616: ("linear-psl", "PSL(3,3)"),
    6048: ("other-named", "PSU(3,3)"),
    6072: ("linear-psl", "PSL(2,23)"),
    7800: ("linear-psl", "PSL(2,25)"),
    7920: ("other-named", "M11"),
    9828: ("linear-psl", "PSL(2,27)"),
}
IDENTIFICATION_BOUND = 10**4


@dataclass(frozen=True, order=True)
class SimpleFactorDescriptor:
    order: int
    kind: str
    name: str

    @property
    def abelian(self) -> bool:
        return self.kind == "cyclic-prime"

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(sympy.primefactors(self.order))

    def __str__(self):
        return self.name


@functools.lru_cache(maxsize=None)
def describe_simple(order: int) -> SimpleFactorDescriptor:
    """Descriptor of the simple group of the given order."""
    if sympy.isprime(order):
        return SimpleFactorDescriptor(order, "cyclic-prime", f"Z({order})")
    if order < IDENTIFICATION_BOUND and order in _SIMPLE_BY_ORDER:
        kind, name = _SIMPLE_BY_ORDER[order]
        return SimpleFactorDescriptor(order, kind, name)
    return SimpleFactorDescriptor(order, "unidentified", f"simple[{order}]")


def _prime_multiset(n: int) -> list[SimpleFactorDescriptor]:
    out = []
    for p, e in sorted(sympy.factorint(n).items()):
        out += [describe_simple(p)] * e
    return out


# --------------------------------------------------------------------------
# structure of a single subgroup


def element_classes(G: PermutationGroup) -> tuple[np.ndarray, np.ndarray]:
    """Conjugacy classes of elements: (class id per element, class sizes)."""
    cached = G.__dict__.get("_element_classes")
    if cached is not None:
        return cached
    ids, sizes = _element_classes_within(G.whole)
    G.__dict__["_element_classes"] = (ids, sizes)
    return ids, sizes


def _element_classes_within(H: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """Classes of H's elements under H-conjugation; ids indexed like H.elements."""
    G = H.ambient
    maps = [G.conj_map(g) for g in H.gens]
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[H.elements] = np.arange(H.order)
    ids = np.full(H.order, -1, dtype=np.int64)
    sizes = []
    for start in range(H.order):
        if ids[start] >= 0:
            continue
        c = len(sizes)
        ids[start] = c
        stack = [int(H.elements[start])]
        count = 1
        while stack:
            x = stack.pop()
            for m in maps:
                y = int(m[x])
                p = pos[y]
                if ids[p] < 0:
                    ids[p] = c
                    count += 1
                    stack.append(y)
        sizes.append(count)
    return ids, np.array(sizes, dtype=np.int64)


def factors_of(H: Subgroup) -> tuple[SimpleFactorDescriptor, ...]:
    """Composition factors of H as a sorted multiset.

    Uses the derived series and, for perfect sections, the normal closure of
    a non-identity element; Jordan-Hoelder makes the result choice-free.
    """
    return tuple(sorted(_factors(H)))


def _factors(H: Subgroup) -> list[SimpleFactorDescriptor]:
    n = H.order
    if n == 1:
        return []
    if sympy.isprime(n):
        return [describe_simple(n)]
    D = derived_subgroup(H)
    if D.order < n:
        return _factors(D) + _prime_multiset(n // D.order)
    G = H.ambient
    ids, _ = _element_classes_within(H)
    seen = set()
    for pos, c in enumerate(ids.tolist()):
        if c in seen or H.elements[pos] == 0:
            continue
        seen.add(c)
        M = normal_closure(G, [int(H.elements[pos])], within=H)
        if M.order < n:
            HG = H.as_group()
            MG = Subgroup(HG, np.sort([HG.index[G.elements[i]] for i in M.elements]), ())
            MG = Subgroup(HG, MG.elements, _small_generating_set(HG, MG.elements))
            Q, _ = quotient_by(HG, MG)
            return _factors(M) + _factors(Q.whole)
    return [describe_simple(n)]


@dataclass(frozen=True)
class StructureRecord:
    abelian: bool
    nilpotent: bool
    solvable: bool
    simple: bool
    perfect: bool


@dataclass(frozen=True)
class Profile:
    """Isomorphism invariants used for class membership."""

    order: int
    factors: tuple[SimpleFactorDescriptor, ...]
    abelian: bool
    nilpotent: bool

    @property
    def solvable(self) -> bool:
        return all(f.abelian for f in self.factors)

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(sympy.primefactors(self.order))


def _as_subgroup(H) -> Subgroup:
    return H.whole if isinstance(H, PermutationGroup) else H


def _is_abelian(H: Subgroup) -> bool:
    t = H.ambient.table
    g = np.array(H.gens, dtype=np.int32)
    return bool((t[g[:, None], g[None, :]] == t[g[None, :], g[:, None]]).all()) if len(g) else True


def _is_nilpotent(H: Subgroup) -> bool:
    # nilpotent iff every Sylow subgroup is normal iff, for each p, the
    # p-elements number exactly |H|_p
    orders = H.ambient.element_orders[H.elements]
    for p, e in sympy.factorint(H.order).items():
        pe = p ** e
        count = int(np.count_nonzero(pe % orders == 0))
        if count != pe:
            return False
    return True


def profile(H) -> Profile:
    H = _as_subgroup(H)
    return Profile(H.order, factors_of(H), _is_abelian(H), _is_nilpotent(H))


def structure_predicates(H) -> StructureRecord:
    H = _as_subgroup(H)
    n = H.order
    D = derived_subgroup(H) if n > 1 else H
    perfect = D.order == n
    solvable = n == 1
    cur = D
    while not solvable:
        if cur.order == 1:
            solvable = True
            break
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            break
        cur = nxt
    if n > 1 and sympy.isprime(n):
        simple = True
    elif perfect and n > 1:
        fs = factors_of(H)
        simple = len(fs) == 1
    else:
        simple = False
    return StructureRecord(
        abelian=_is_abelian(H),
        nilpotent=_is_nilpotent(H),
        solvable=solvable,
        simple=simple,
        perfect=perfect,
    )


# --------------------------------------------------------------------------
# lattice


class SubgroupLattice:
    """All subgroups of a group, partitioned into conjugacy classes.

    ``subgroups`` is sorted by (class id, canonical form); classes are
    sorted by (order, canonical form of representative), so class 0 is the
    trivial subgroup and the last class is the whole group.
    """

    def __init__(self, ambient: PermutationGroup, subgroups: list[Subgroup], class_of: list[int]):
        self.ambient = ambient
        self.subgroups = subgroups
        self.class_of = class_of
        classes: list[list[int]] = []
        for i, c in enumerate(class_of):
            while len(classes) <= c:
                classes.append([])
            classes[c].append(i)
        self.classes = classes
        self.index_of_key = {H.key: i for i, H in enumerate(subgroups)}
        self.orders = np.array([H.order for H in subgroups], dtype=np.int64)
        self.keys = [H.key for H in subgroups]

    def __len__(self):
        return len(self.subgroups)

    def __repr__(self):
        return f"SubgroupLattice({self.ambient!r}: {len(self)} subgroups, {len(self.classes)} classes)"

    # -- basic queries --------------------------------------------------

    def rep(self, c: int) -> Subgroup:
        return self.subgroups[self.classes[c][0]]

    def rep_index(self, c: int) -> int:
        return self.classes[c][0]

    def class_size(self, c: int) -> int:
        return len(self.classes[c])

    def normalizer_order(self, c: int) -> int:
        return self.ambient.order // len(self.classes[c])

    @property
    def whole_index(self) -> int:
        return len(self.subgroups) - 1

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def find(self, H: Subgroup) -> int:
        return self.index_of_key[H.key]

    def includes(self, i: int, j: int) -> bool:
        """True if subgroup i is contained in subgroup j."""
        ki = self.keys[i]
        return ki & self.keys[j] == ki

    def inclusion(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with subgroup i a proper subgroup of j."""
        out = []
        for j in range(len(self)):
            out += [(i, j) for i in self.sub_indices(j) if i != j]
        return out

    @functools.lru_cache(maxsize=None)
    def class_profile(self, c: int) -> Profile:
        return profile(self.rep(c))

    def profile_of(self, i: int) -> Profile:
        return self.class_profile(self.class_of[i])

    @functools.lru_cache(maxsize=None)
    def overgroup_classes(self, c: int) -> frozenset[int]:
        """Classes having a member that properly contains the representative."""
        r = self.rep(c)
        rk, ro = r.key, r.order
        out = set()
        for j in np.flatnonzero((self.orders > ro) & (self.orders % ro == 0)).tolist():
            if rk & self.keys[j] == rk:
                out.add(self.class_of[j])
        return frozenset(out)

    @functools.lru_cache(maxsize=None)
    def sub_indices(self, i: int) -> tuple[int, ...]:
        """Indices of all subgroups contained in subgroup i."""
        if i == self.whole_index:
            return tuple(range(len(self)))
        ki, oi = self.keys[i], int(self.orders[i])
        cand = np.flatnonzero(oi % self.orders == 0).tolist()
        return tuple(j for j in cand if self.keys[j] & ki == self.keys[j])

    @functools.lru_cache(maxsize=None)
    def internal_classes(self, i: int) -> dict[int, int]:
        """Partition of the subgroups of subgroup i under its own conjugation.

        Returns a map subgroup index -> class label (smallest member index).
        """
        if i == self.whole_index:
            return {j: self.classes[c][0] for j, c in enumerate(self.class_of)}
        G = self.ambient
        K = self.subgroups[i]
        maps = [G.conj_map(g) for g in K.gens]
        members = self.sub_indices(i)
        label: dict[int, int] = {}
        for j in members:
            if j in label:
                continue
            label[j] = j
            stack = [j]
            while stack:
                x = stack.pop()
                H = self.subgroups[x]
                for m in maps:
                    y = self.index_of_key[_key(m[H.elements], G.order)]
                    if y not in label:
                        label[y] = j
                        stack.append(y)
        return label

    def normal_indices(self) -> list[int]:
        return [self.classes[c][0] for c in range(self.num_classes) if len(self.classes[c]) == 1]

    def normal_within(self, i: int) -> list[int]:
        """Indices of the subgroups normal in subgroup i."""
        K = self.subgroups[i]
        if i == self.whole_index:
            return self.normal_indices()
        return [j for j in self.sub_indices(i) if is_normal(self.subgroups[j], within=K)]

    def dump(self) -> str:
        """One line per subgroup: generators, class id, normal flag."""
        G = self.ambient
        lines = []
        for i, H in enumerate(self.subgroups):
            gens = sorted(str(Permutation(G.elements[g])) for g in H.gens)
            normal = int(len(self.classes[self.class_of[i]]) == 1)
            lines.append(f"[{', '.join(gens)}]\t{self.class_of[i]}\t{normal}")
        return "\n".join(lines) + "\n"


def cyclic_subgroups(G: PermutationGroup) -> list[Subgroup]:
    t = G.ktable
    orders = G.element_orders
    done = np.zeros(G.order, dtype=bool)
    done[0] = True
    out = []
    for g in range(1, G.order):
        if done[g]:
            continue
        elems = kernels.closure(t, (), [g])
        done[elems[orders[elems] == orders[g]]] = True
        out.append(Subgroup(G, elems, (g,)))
    return out


def _lattice_cap(G: PermutationGroup, cap: int | None) -> None:
    limit = CAPS.lattice if cap is None else min(cap, CAPS.lattice_hard)
    if G.order > limit:
        raise CapExceeded(f"lattice cap {limit} exceeded by group of order {G.order}")


def all_subgroups(G: PermutationGroup, cap: int | None = None) -> SubgroupLattice:
    """Complete subgroup lattice of G (cached on the group)."""
    cached = G.__dict__.get("_lattice")
    if cached is not None:
        return cached
    _lattice_cap(G, cap)
    n = G.order
    maps = G.gen_conj_maps
    cyclic = [(C.gens[0], C) for C in cyclic_subgroups(G)]
    seen: dict[int, int] = {}
    subs: list[Subgroup] = []
    cls: list[int] = []
    queue: list[Subgroup] = []

    def register(K: Subgroup) -> None:
        c = len(queue)
        seen[K.key] = c
        subs.append(K)
        cls.append(c)
        stack = [K]
        while stack:
            M = stack.pop()
            for m in maps:
                elems = np.sort(m[M.elements])
                k = _key(elems, n)
                if k not in seen:
                    seen[k] = c
                    img = Subgroup(G, elems, m[list(M.gens)].tolist() if M.gens else ())
                    subs.append(img)
                    cls.append(c)
                    stack.append(img)
        queue.append(K)

    register(G.trivial)
    head = 0
    while head < len(queue):
        H = queue[head]
        head += 1
        hk = H.key
        for g, C in cyclic:
            if hk >> g & 1:
                continue
            K = join(H, [g])
            if K.key not in seen:
                register(K)
    return _finish(G, subs, cls)


def _finish(G: PermutationGroup, subs: list[Subgroup], cls: list[int]) -> SubgroupLattice:
    members: dict[int, list[Subgroup]] = {}
    for H, c in zip(subs, cls):
        members.setdefault(c, []).append(H)
    blocks = []
    for c, hs in members.items():
        hs.sort(key=lambda H: H.canonical())
        blocks.append((hs[0].order, hs[0].canonical(), hs))
    blocks.sort(key=lambda b: (b[0], b[1]))
    out_subs: list[Subgroup] = []
    out_cls: list[int] = []
    for c, (_, _, hs) in enumerate(blocks):
        for H in hs:
            if not H.gens or len(H.gens) > 8:
                H.gens = _small_generating_set(G, H.elements)
            out_subs.append(H)
            out_cls.append(c)
    lat = SubgroupLattice(G, out_subs, out_cls)
    G.__dict__["_lattice"] = lat
    return lat


def normal_subgroups(G) -> list[tuple[Subgroup, bool]]:
    """Normal subgroups with a minimal-normal flag, smallest first."""
    lat = all_subgroups(G.as_group() if isinstance(G, Subgroup) else G)
    idx = lat.normal_indices()
    out = []
    for i in idx:
        H = lat.subgroups[i]
        minimal = H.order > 1 and not any(
            j != i and lat.orders[j] > 1 and lat.includes(j, i) for j in idx)
        out.append((H, minimal))
    return out


def composition_factors(G, tie_break: str = "smallest") -> tuple[SimpleFactorDescriptor, ...]:
    """Composition factors through a chain of maximal normal subgroups.

    At each step the maximal proper normal subgroup with the smallest (or,
    with ``tie_break="largest"``, largest) canonical form is chosen.
    """
    if isinstance(G, Subgroup):
        G = G.as_group()
    lat = all_subgroups(G)
    out = []
    i = lat.whole_index
    while lat.orders[i] > 1:
        normals = [j for j in lat.normal_within(i) if j != i]
        maximal = [j for j in normals
                   if not any(k != j and lat.includes(j, k) for k in normals)]
        pick = sorted(maximal, key=lambda j: lat.subgroups[j].canonical())
        j = pick[0] if tie_break == "smallest" else pick[-1]
        out.append(describe_simple(int(lat.orders[i] // lat.orders[j])))
        i = j
    return tuple(sorted(out))


# --------------------------------------------------------------------------
# isomorphism


def _derived_signature(G: PermutationGroup) -> tuple[int, ...]:
    sig = [G.order]
    cur = G.whole
    while cur.order > 1:
        nxt = derived_subgroup(cur)
        if nxt.order == cur.order:
            break
        sig.append(nxt.order)
        cur = nxt
    return tuple(sig)


def fingerprint(G: PermutationGroup) -> tuple:
    ids, sizes = element_classes(G)
    orders = G.element_orders
    hist = tuple(sorted(Counter(orders.tolist()).items()))
    cls = tuple(sorted(Counter(zip(sizes.tolist(), [0] * len(sizes))).items()))
    # class sizes paired with element orders
    rep_order = np.zeros(len(sizes), dtype=np.int64)
    rep_order[ids] = orders
    pairs = tuple(sorted(Counter(zip(sizes.tolist(), rep_order.tolist())).items()))
    center = int(np.sum(sizes == 1))
    return (G.order, hist, cls, pairs, _derived_signature(G), center)


def _generating_pair_or_set(G: PermutationGroup) -> list[int]:
    n = G.order
    if n == 1:
        return []
    greedy = list(_small_generating_set(G, np.arange(n, dtype=np.int32)))
    if len(greedy) <= 2:
        return greedy
    ids, sizes = element_classes(G)
    orders = G.element_orders
    reps = sorted({int(np.flatnonzero(ids == c)[0]) for c in range(len(sizes))},
                  key=lambda x: (-orders[x], x))
    others = sorted(range(1, n), key=lambda x: (-orders[x], x))
    budget = 20000
    for a in reps:
        for b in others:
            budget -= 1
            if budget < 0:
                return greedy
            if len(kernels.closure(G.ktable, (), [a, b])) == n:
                return [a, b]
    return greedy


def _spanning_tree(G: PermutationGroup, gens: Sequence[int]):
    """BFS tree of G over the element indices ``gens``: (order, parent, slot)."""
    t = G.table
    n = G.order
    parent = [0] * n
    pgen = [0] * n
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for s, g in enumerate(gens):
            y = int(t[x, g])
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                pgen[y] = s
                order.append(y)
    return order, parent, pgen


def are_isomorphic(G1: PermutationGroup, G2: PermutationGroup):
    """Generator-image witness [(g, image), ...] if G1 and G2 are isomorphic, else None."""
    for G in (G1, G2):
        if G.order > CAPS.iso:
            raise CapExceeded(f"iso cap {CAPS.iso} exceeded by group of order {G.order}")
    if G1.order != G2.order:
        return None
    if G1.order == 1:
        return []
    if fingerprint(G1) != fingerprint(G2):
        return None
    gens = _generating_pair_or_set(G1)
    order, parent, pgen = _spanning_tree(G1, gens)
    t1, t2 = G1.ktable, G2.ktable
    ids1, sizes1 = element_classes(G1)
    ids2, sizes2 = element_classes(G2)
    o1, o2 = G1.element_orders, G2.element_orders
    csize1 = sizes1[ids1]
    csize2 = sizes2[ids2]
    T1, T2 = G1.table, G2.table
    cand_all = [np.flatnonzero((o2 == o1[g]) & (csize2 == csize1[g])) for g in gens]
    # image of the first generator only up to conjugacy in G2
    first = []
    seen_cls = set()
    for x in cand_all[0].tolist():
        if ids2[x] not in seen_cls:
            seen_cls.add(ids2[x])
            first.append(x)
    cands = [first] + [c.tolist() for c in cand_all[1:]]
    k = len(gens)

    def rec(level: int, imgs: list[int]):
        if level == k:
            f = kernels.extend_hom(t1, t2, order, parent, pgen, gens, imgs)
            if f is not None and np.count_nonzero(f == 0) == 1:
                return list(imgs)
            return None
        for y in cands[level]:
            ok = True
            for j in range(level):
                if o1[T1[gens[j], gens[level]]] != o2[T2[imgs[j], y]]:
                    ok = False
                    break
            if not ok:
                continue
            res = rec(level + 1, imgs + [y])
            if res is not None:
                return res
        return None

    imgs = rec(0, [])
    if imgs is None:
        return None
    return [(G1.element(g), G2.element(h)) for g, h in zip(gens, imgs)]
