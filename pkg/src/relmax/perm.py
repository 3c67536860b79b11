"""Permutations and finite permutation groups.

Permutations act on the right: ``x^(gh) = (x^g)^h`` and the product
``g * h`` means "apply g, then h".  Groups whose order fits under the
element cap are materialized with their elements sorted lexicographically
by image tuple, so element index 0 is the identity and a sorted index list
is the lexicographically sorted list of image arrays.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .config import CAPS
from .errors import CapExceeded, UsageError


class Permutation:
    """An immutable permutation of ``{0, ..., degree-1}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise UsageError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> Permutation:
        return cls(parse_cycles(text, degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise UsageError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def __invert__(self) -> Permutation:
        return Permutation(_inv(self.images))

    inverse = __invert__

    def __pow__(self, k: int) -> Permutation:
        base = self.images if k >= 0 else _inv(self.images)
        out = tuple(range(self.degree))
        for _ in range(abs(k)):
            out = _mul(out, base)
        return Permutation(out)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return math.lcm(*[len(c) for c in self.cycles()] or [1])

    def cycles(self) -> list[tuple[int, ...]]:
        return _cycles(self.images)

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def __str__(self):
        return format_cycles(self.images)

    def __repr__(self):
        return f"Permutation({format_cycles(self.images)!r}, degree={self.degree})"


def _mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple([q[i] for i in p])


def _inv(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def format_cycles(p: Sequence[int]) -> str:
    cyc = _cycles(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation such as ``(0 1 2)(3 4)``; commas also separate."""
    stripped = text.strip()
    if _CYCLE_RE.sub("", stripped).strip():
        raise UsageError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
        if len(set(pts)) != len(pts):
            raise UsageError(f"repeated point in cycle {body!r}")
        if pts and min(pts) < 0:
            raise UsageError(f"negative point in {text!r}")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=-1) + 1
    if degree is None:
        degree = top
    elif top > degree:
        raise UsageError(f"point {top - 1} outside degree {degree}")
    out = list(range(degree))
    for c in cycles:
        # composing disjointness-agnostically: apply cycles left to right
        step = list(range(degree))
        for a, b in zip(c, c[1:] + c[:1]):
            step[a] = b
        out = [step[i] for i in out]
    return tuple(out)


# --------------------------------------------------------------------------
# Schreier-Sims


class _Level:
    __slots__ = ("base", "gens", "trans", "next")

    def __init__(self):
        self.base = None
        self.gens = []
        self.trans = {}
        self.next = None


class StabilizerChain:
    """Deterministic incremental Schreier-Sims.

    Used for order and membership of groups too large to enumerate.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        self.top = _Level()
        self._id = tuple(range(degree))
        for g in generators:
            self._add(self.top, tuple(g))

    def sift(self, g: Sequence[int]) -> tuple[int, ...]:
        g = tuple(g)
        lev = self.top
        while lev is not None and lev.base is not None:
            p = g[lev.base]
            u = lev.trans.get(p)
            if u is None:
                return g
            g = _mul(g, _inv(u))
            lev = lev.next
        return g

    def __contains__(self, g) -> bool:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        return self.sift(images) == self._id

    def order(self) -> int:
        out = 1
        lev = self.top
        while lev is not None and lev.base is not None:
            out *= len(lev.trans)
            lev = lev.next
        return out

    def _add(self, lev: _Level, g: tuple[int, ...]) -> None:
        # sift from this level down; residue must be added here
        h = g
        cur = lev
        while cur is not None and cur.base is not None:
            u = cur.trans.get(h[cur.base])
            if u is None:
                break
            h = _mul(h, _inv(u))
            cur = cur.next
        if h == self._id:
            return
        if lev.base is None:
            lev.base = next(i for i, x in enumerate(g) if i != x)
            lev.trans = {lev.base: self._id}
            lev.next = _Level()
        lev.gens.append(g)
        schreier = []
        # old orbit points with the new generator
        queue = []
        for p, u in list(lev.trans.items()):
            q = g[p]
            uq = _mul(u, g)
            if q in lev.trans:
                schreier.append(_mul(uq, _inv(lev.trans[q])))
            else:
                lev.trans[q] = uq
                queue.append(q)
        # new orbit points with every generator
        while queue:
            p = queue.pop()
            u = lev.trans[p]
            for s in lev.gens:
                q = s[p]
                uq = _mul(u, s)
                if q in lev.trans:
                    schreier.append(_mul(uq, _inv(lev.trans[q])))
                else:
                    lev.trans[q] = uq
                    queue.append(q)
        for s in schreier:
            self._add(lev.next, s)


# --------------------------------------------------------------------------
# groups


def _key(elems: np.ndarray, n: int) -> int:
    mask = np.zeros(n, dtype=bool)
    mask[elems] = True
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


class PermutationGroup:
    """A permutation group given by generators.

    Order, element list and Cayley table are computed lazily and each is
    guarded by its own cap.  Instances are treated as immutable.
    """

    def __init__(self, generators: Iterable, degree: int, name: str | None = None):
        gens = []
        for g in generators:
            images = g.images if isinstance(g, Permutation) else tuple(int(i) for i in g)
            if len(images) != degree:
                raise UsageError(f"generator {format_cycles(images)} has degree "
                                 f"{len(images)}, expected {degree}")
            if sorted(images) != list(range(degree)):
                raise UsageError(f"not a permutation: {images}")
            gens.append(images)
        CAPS.check("degree", degree, f"degree {degree}")
        self.degree = degree
        self.name = name
        self._gens = tuple(gens)

    def __repr__(self):
        label = self.name or f"<{len(self._gens)} generators>"
        return f"PermutationGroup({label}, degree={self.degree})"

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation(g) for g in self._gens]

    @functools.cached_property
    def chain(self) -> StabilizerChain:
        chain = StabilizerChain(self.degree, self._gens)
        CAPS.check("order", chain.order(), f"order {chain.order()}")
        return chain

    @functools.cached_property
    def order(self) -> int:
        if "_elements" in self.__dict__:
            return len(self._elements)
        return self.chain.order()

    def __len__(self):
        return self.order

    def contains(self, g) -> bool:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if len(images) != self.degree:
            return False
        if "_elements" in self.__dict__ or self.order <= CAPS.elements:
            return images in self.index
        return images in self.chain

    __contains__ = contains

    # -- materialization ------------------------------------------------

    @functools.cached_property
    def _elements(self) -> list[tuple[int, ...]]:
        expected = self.order
        CAPS.check("elements", expected, f"group of order {expected}")
        ident = tuple(range(self.degree))
        seen = {ident}
        queue = [ident]
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for g in self._gens:
                y = _mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > CAPS.elements:
                        raise CapExceeded(f"elements cap {CAPS.elements} exceeded")
        return sorted(seen)

    @property
    def elements(self) -> list[tuple[int, ...]]:
        return self._elements

    def element(self, i: int) -> Permutation:
        return Permutation(self._elements[i])

    @functools.cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self._elements)}

    def index_of(self, g) -> int:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        try:
            return self.index[images]
        except KeyError:
            raise UsageError(f"{format_cycles(images)} is not an element of {self}") from None

    @functools.cached_property
    def gen_idx(self) -> tuple[int, ...]:
        return tuple(self.index[g] for g in self._gens)

    @functools.cached_property
    def _tree(self):
        """BFS spanning tree over generators: (order, parent, generator slot)."""
        n = self.order
        parent = [0] * n
        pgen = [0] * n
        seen = [False] * n
        seen[0] = True
        order = [0]
        elems, index = self._elements, self.index
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for s, g in enumerate(self._gens):
                y = index[_mul(elems[x], g)]
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    pgen[y] = s
                    order.append(y)
        return order, parent, pgen

    @functools.cached_property
    def table(self) -> np.ndarray:
        """Cayley table: ``table[i, j]`` is the index of ``e_i * e_j``."""
        n = self.order
        CAPS.check("table", n, f"Cayley table for order {n}")
        elems, index = self._elements, self.index
        # right multiplication by each generator
        right = np.array([[index[_mul(e, g)] for e in elems] for g in self._gens],
                         dtype=np.int32).reshape(len(self._gens), n)
        order, parent, pgen = self._tree
        t = np.empty((n, n), dtype=np.int32)
        t[:, 0] = np.arange(n, dtype=np.int32)
        for y in order[1:]:
            t[:, y] = right[pgen[y]][t[:, parent[y]]]
        return t

    @functools.cached_property
    def ktable(self):
        return kernels.prepare_table(self.table)

    @functools.cached_property
    def inv(self) -> np.ndarray:
        t = self.table
        rows, cols = np.nonzero(t == 0)
        out = np.empty(self.order, dtype=np.int32)
        out[rows] = cols
        return out

    @functools.cached_property
    def element_orders(self) -> np.ndarray:
        return kernels.element_orders(self.ktable)

    def conj_map(self, g: int) -> np.ndarray:
        """Index array of x -> g^-1 x g."""
        t = self.table
        return t[t[self.inv[g]], g]

    @functools.cached_property
    def gen_conj_maps(self) -> list[np.ndarray]:
        return [self.conj_map(g) for g in self.gen_idx]

    # -- convenience ------------------------------------------------------

    @functools.cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order, dtype=np.int32), self.gen_idx)

    @functools.cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, np.zeros(1, dtype=np.int32), ())

    def is_abelian(self) -> bool:
        gs = self._gens
        return all(_mul(a, b) == _mul(b, a) for a in gs for b in gs)


class Subgroup:
    """A subgroup of a materialized group, stored as sorted element indices."""

    __slots__ = ("ambient", "elements", "key", "gens", "__weakref__", "_group")

    def __init__(self, ambient: PermutationGroup, elements, gens: Iterable[int] = ()):
        self.ambient = ambient
        self.elements = np.asarray(elements, dtype=np.int32)
        self.key = _key(self.elements, ambient.order)
        self.gens = tuple(int(g) for g in gens)
        self._group = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, (Permutation, tuple)):
            images = x.images if isinstance(x, Permutation) else x
            i = self.ambient.index.get(images)
            return i is not None and bool(self.key >> i & 1)
        return bool(self.key >> int(x) & 1)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.ambient is self.ambient
                and other.key == self.key)

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other: Subgroup) -> bool:
        return self.key & other.key == self.key

    def __lt__(self, other: Subgroup) -> bool:
        return self.key != other.key and self <= other

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens=[{', '.join(map(str, self.generator_perms()))}])"

    def canonical(self) -> tuple[int, ...]:
        """Canonical form: sorted element indices (== sorted image arrays)."""
        return tuple(self.elements.tolist())

    def perms(self) -> list[Permutation]:
        return [self.ambient.element(i) for i in self.elements]

    def generator_perms(self) -> list[Permutation]:
        return [self.ambient.element(i) for i in self.gens]

    def small_gens(self) -> tuple[int, ...]:
        return self.gens

    def conjugate(self, g: int) -> Subgroup:
        m = self.ambient.conj_map(g)
        return Subgroup(self.ambient, np.sort(m[self.elements]), m[list(self.gens)] if self.gens else ())

    def as_group(self, name: str | None = None) -> PermutationGroup:
        """A fresh PermutationGroup generated by this subgroup's generators."""
        if self._group is None:
            gens = [self.ambient.elements[i] for i in self.gens]
            self._group = PermutationGroup(gens, self.ambient.degree, name=name)
        return self._group

    def element_index_in_group(self) -> np.ndarray:
        """Map: position in self.elements -> index in self.as_group()."""
        grp = self.as_group()
        return np.array([grp.index[self.ambient.elements[i]] for i in self.elements],
                        dtype=np.int32)


# --------------------------------------------------------------------------
# operations


def group_from_generators(generators: Iterable, degree: int, name: str | None = None) -> PermutationGroup:
    """Group generated by ``generators``; order computed exactly."""
    G = PermutationGroup(generators, degree, name=name)
    n = G.chain.order()
    if n <= CAPS.elements:
        if len(G.elements) != n:
            raise AssertionError("element enumeration disagrees with Schreier-Sims order")
    return G


def subgroup_from_indices(G: PermutationGroup, gens: Sequence[int]) -> Subgroup:
    gens = sorted({int(g) for g in gens if int(g) != 0})
    return Subgroup(G, kernels.closure(G.ktable, (), gens), gens)


def subgroup_generated(G: PermutationGroup, seed: Iterable) -> Subgroup:
    """Smallest subgroup of G containing the permutations in ``seed``."""
    idx = []
    for g in seed:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        if images not in G.index:
            raise UsageError(f"{format_cycles(images)} is not an element of {G}")
        idx.append(G.index[images])
    return subgroup_from_indices(G, idx)


def join(H: Subgroup, more: Iterable[int]) -> Subgroup:
    """Subgroup generated by H and the element indices in ``more``."""
    G = H.ambient
    more = [int(m) for m in more if not H.key >> int(m) & 1]
    if not more:
        return H
    gens = list(H.gens) + more
    return Subgroup(G, kernels.closure(G.ktable, H.elements, gens), gens)


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    elems = np.intersect1d(H.elements, K.elements).astype(np.int32)
    return Subgroup(H.ambient, elems, _small_generating_set(H.ambient, elems))


def _small_generating_set(G: PermutationGroup, elems: np.ndarray) -> tuple[int, ...]:
    """Greedy generating set of the subgroup with element set ``elems``."""
    if len(elems) <= 1:
        return ()
    target = len(elems)
    orders = G.element_orders[elems]
    # try high-order elements first; deterministic
    cand = elems[np.lexsort((elems, -orders))]
    cur = np.zeros(1, dtype=np.int32)
    mask = {0}
    gens: list[int] = []
    for c in cand:
        c = int(c)
        if c in mask:
            continue
        gens.append(c)
        cur = kernels.closure(G.ktable, cur, gens)
        mask = set(cur.tolist())
        if len(cur) == target:
            break
    return tuple(gens)


def conjugate_elements(G: PermutationGroup, elems: np.ndarray, g: int) -> np.ndarray:
    return np.sort(G.conj_map(g)[elems])


def are_conjugate(G: PermutationGroup, H: Subgroup, K: Subgroup) -> int | None:
    """Index of some g with H^g = K, or None."""
    if H.key == K.key:
        return 0
    if H.order != K.order:
        return None
    oh = np.bincount(G.element_orders[H.elements])
    ok = np.bincount(G.element_orders[K.elements])
    if len(oh) != len(ok) or (oh != ok).any():
        return None
    if _cycle_type_multiset(G, H) != _cycle_type_multiset(G, K):
        return None
    t, inv = G.table, G.inv
    kkey = K.key
    # generators suffice: conjugates of H's generators must land in K
    hg = np.array(H.gens, dtype=np.int32)
    kmask = np.zeros(G.order, dtype=bool)
    kmask[K.elements] = True
    for g in range(G.order):
        imgs = t[t[inv[g], hg], g]
        if not kmask[imgs].all():
            continue
        if _key(t[t[inv[g], H.elements], g], G.order) == kkey:
            return g
    return None


def _cycle_type_multiset(G: PermutationGroup, H: Subgroup):
    from collections import Counter
    return Counter(Permutation(G.elements[i]).cycle_type() for i in H.elements)


def normalizer(G: PermutationGroup, H: Subgroup) -> Subgroup:
    """N_G(H), by scanning G."""
    t, inv = G.table, G.inv
    hmask = np.zeros(G.order, dtype=bool)
    hmask[H.elements] = True
    hg = np.array(H.gens, dtype=np.int32)
    keep = []
    for g in range(G.order):
        if hmask[t[t[inv[g], hg], g]].all():
            keep.append(g)
    elems = np.array(keep, dtype=np.int32)
    return Subgroup(G, elems, _small_generating_set(G, elems))


def centralizer(G: PermutationGroup, S: Subgroup) -> Subgroup:
    """C_G(S): elements commuting with every element of S."""
    t = G.table
    sg = np.array(S.gens, dtype=np.int32)
    keep = [g for g in range(G.order) if (t[g, sg] == t[sg, g]).all()]
    elems = np.array(keep, dtype=np.int32)
    return Subgroup(G, elems, _small_generating_set(G, elems))


def normal_closure(G: PermutationGroup, seeds: Iterable[int], within: Subgroup | None = None) -> Subgroup:
    """Normal closure of the element indices ``seeds`` in ``within`` (default G)."""
    conj = ([G.conj_map(g) for g in within.gens] if within is not None
            else G.gen_conj_maps)
    gens = sorted({int(s) for s in seeds if int(s) != 0})
    cur = kernels.closure(G.ktable, (), gens)
    while True:
        mask = np.zeros(G.order, dtype=bool)
        mask[cur] = True
        new = []
        for m in conj:
            img = m[cur]
            out = img[~mask[img]]
            if len(out):
                new.append(int(out[0]))
                break
        if not new:
            return Subgroup(G, cur, gens)
        gens += new
        cur = kernels.closure(G.ktable, cur, gens)


def is_normal(H: Subgroup, within: Subgroup | None = None) -> bool:
    G = H.ambient
    conj = ([G.conj_map(g) for g in within.gens] if within is not None
            else G.gen_conj_maps)
    mask = np.zeros(G.order, dtype=bool)
    mask[H.elements] = True
    hg = np.array(H.gens, dtype=np.int32)
    return all(mask[m[hg]].all() for m in conj)


def derived_subgroup(H: Subgroup) -> Subgroup:
    G = H.ambient
    t, inv = G.table, G.inv
    comms = []
    for a in H.gens:
        for b in H.gens:
            c = t[t[inv[a], inv[b]], t[a, b]]
            if c != 0:
                comms.append(int(c))
    return normal_closure(G, comms, within=H)


@dataclass
class Epimorphism:
    """A surjective homomorphism given by its full element map."""

    domain: PermutationGroup
    codomain: PermutationGroup
    element_map: np.ndarray
    kernel: Subgroup

    def __call__(self, g):
        i = g if isinstance(g, (int, np.integer)) else self.domain.index_of(g)
        return self.codomain.element(int(self.element_map[i]))

    def image(self, H: Subgroup) -> Subgroup:
        elems = np.unique(self.element_map[H.elements]).astype(np.int32)
        gens = sorted({int(self.element_map[g]) for g in H.gens} - {0})
        return Subgroup(self.codomain, elems, gens)

    def preimage(self, K: Subgroup) -> Subgroup:
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[K.elements] = True
        elems = np.flatnonzero(mask[self.element_map]).astype(np.int32)
        return Subgroup(self.domain, elems, _small_generating_set(self.domain, elems))

    def is_multiplicative(self, samples: int | None = None, seed: int = 0) -> bool:
        dt, ct, f = self.domain.table, self.codomain.table, self.element_map
        n = self.domain.order
        if samples is None and n <= 5000:
            return bool((f[dt] == ct[f[:, None], f[None, :]]).all())
        rng = np.random.default_rng(seed)
        a = rng.integers(0, n, samples or 10**4)
        b = rng.integers(0, n, samples or 10**4)
        return bool((f[dt[a, b]] == ct[f[a], f[b]]).all())


def quotient_by(G: PermutationGroup, N: Subgroup, name: str | None = None
                ) -> tuple[PermutationGroup, Epimorphism]:
    """G/N realized by the right-coset action, with the canonical epimorphism."""
    if N.ambient is not G:
        raise UsageError("N is not a subgroup of G")
    if not is_normal(N):
        raise UsageError("subgroup is not normal")
    index = G.order // N.order
    CAPS.check("degree", index, f"quotient degree {index}")
    ids, count = kernels.right_cosets(G.ktable, N.elements)
    assert count == index
    reps = np.zeros(index, dtype=np.int32)
    seen = np.zeros(index, dtype=bool)
    for x in range(G.order):
        c = ids[x]
        if not seen[c]:
            seen[c] = True
            reps[c] = x
    t = G.table
    gens = [tuple(ids[t[reps, g]].tolist()) for g in G.gen_idx]
    Q = PermutationGroup(gens, index, name=name)
    assert Q.order == index
    # element map along G's spanning tree
    order, parent, pgen = G._tree
    qgen = [Q.index[g] for g in gens]
    f = np.zeros(G.order, dtype=np.int32)
    qt = Q.table if Q.order <= CAPS.table else None
    for y in order[1:]:
        if qt is not None:
            f[y] = qt[f[parent[y]], qgen[pgen[y]]]
        else:
            f[y] = Q.index[_mul(Q.elements[f[parent[y]]], gens[pgen[y]])]
    return Q, Epimorphism(G, Q, f, N)


@dataclass
class DirectProduct:
    """A direct product together with its factor embeddings."""

    group: PermutationGroup
    factors: tuple[PermutationGroup, ...]
    offsets: tuple[int, ...]
    _embedded: dict = field(default_factory=dict, repr=False)

    def embed_perm(self, i: int, g) -> tuple[int, ...]:
        images = g.images if isinstance(g, Permutation) else tuple(g)
        out = list(range(self.group.degree))
        off = self.offsets[i]
        for p, q in enumerate(images):
            out[off + p] = off + q
        return tuple(out)

    def embed(self, i: int, H: Subgroup | None = None) -> Subgroup:
        """Image of the subgroup H of factor i (default: the whole factor)."""
        F = self.factors[i]
        gens = F._gens if H is None else [F.elements[g] for g in H.gens]
        return subgroup_generated(self.group, [self.embed_perm(i, g) for g in gens])

    def factor_subgroups(self) -> list[Subgroup]:
        return [self.embed(i) for i in range(len(self.factors))]


def direct_product(*groups: PermutationGroup, name: str | None = None) -> DirectProduct:
    degree = sum(G.degree for G in groups)
    CAPS.check("degree", degree, f"product degree {degree}")
    offsets = []
    off = 0
    for G in groups:
        offsets.append(off)
        off += G.degree
    gens = []
    for i, G in enumerate(groups):
        for g in G._gens:
            out = list(range(degree))
            for p, q in enumerate(g):
                out[offsets[i] + p] = offsets[i] + q
            gens.append(tuple(out))
    if name is None and all(G.name for G in groups):
        name = "×".join(G.name for G in groups)
    P = PermutationGroup(gens, degree, name=name)
    prod = 1
    for G in groups:
        prod *= G.order
    P.__dict__["order"] = prod  # multiplicative; cross-checked in tests
    return DirectProduct(P, tuple(groups), tuple(offsets))


def induced_automorphism_group(H: Subgroup, S: Subgroup) -> PermutationGroup:
    """Aut_H(S) acting faithfully on the elements of S (points = positions in S)."""
    G = H.ambient
    NH = intersection(H, normalizer(G, S))
    pos = {int(e): i for i, e in enumerate(S.elements)}
    gens = []
    for x in NH.gens:
        m = G.conj_map(x)
        gens.append(tuple(pos[int(m[e])] for e in S.elements))
    return PermutationGroup(gens, S.order)


# --------------------------------------------------------------------------
# group spec text format


def read_group_spec(text: str, name: str | None = None) -> PermutationGroup:
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("degree"):
            _, _, val = line.partition(":")
            try:
                degree = int(val)
            except ValueError:
                raise UsageError(f"bad degree line {raw!r}") from None
            continue
        if degree is None:
            raise UsageError("group spec must start with 'degree: n'")
        gens.append(parse_cycles(line, degree))
    if degree is None:
        raise UsageError("group spec has no degree line")
    return group_from_generators(gens, degree, name=name)


def write_group_spec(G: PermutationGroup) -> str:
    lines = []
    if G.name:
        lines.append(f"# {G.name}")
    lines.append(f"degree: {G.degree}")
    lines += [format_cycles(g) for g in G._gens]
    return "\n".join(lines) + "\n"
