"""Named groups.

Grammar::

    group   := factor (("×" | "x") factor)*
    factor  := "1" | Z(n) | C(n) | Sym(n) | S(n) | Alt(n) | A(n) | D(2n)
             | Q(4n) | PSL(2,q) | PGL(2,q)

PSL(2,q) and PGL(2,q) act on the q+1 points of the projective line over
GF(q) (points 0..q-1 are field elements, point q is infinity).
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Callable

import sympy

from .errors import UsageError
from .lattice import all_subgroups, are_isomorphic
from .perm import DirectProduct, PermutationGroup, Subgroup, direct_product, group_from_generators

_FACTOR_RE = re.compile(r"^\s*([A-Za-z]+)\s*\(\s*([0-9]+)\s*(?:,\s*([0-9]+)\s*)?\)\s*$")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    build: Callable[[], PermutationGroup]


# --------------------------------------------------------------------------
# finite fields


class GaloisField:
    """GF(p^k) with elements 0..q-1 (base-p digits = polynomial coefficients)."""

    def __init__(self, q: int):
        fac = sympy.factorint(q)
        if len(fac) != 1:
            raise UsageError(f"{q} is not a prime power")
        (p, k), = fac.items()
        self.p, self.k, self.q = p, k, q
        self.modulus = _irreducible(p, k)
        self._mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]
        self.primitive = next(g for g in range(2, q + 1) if self._order(g % q) == q - 1) if q > 2 else 1
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.k)]

    def _undigits(self, d: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(d))

    def add(self, a: int, b: int) -> int:
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus (coefficients low to high, length k+1)
        m = self.modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * m[i]) % p
        return self._undigits(prod[:k])

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def _order(self, a: int) -> int:
        if a == 0:
            return 0
        x, n = a, 1
        while x != 1:
            x = self._slow_mul(x, a)
            n += 1
        return n


def _irreducible(p: int, k: int) -> list[int]:
    """Lexicographically first monic irreducible polynomial of degree k over GF(p)."""
    if k == 1:
        return [0, 1]
    x = sympy.Symbol("x")
    for code in range(p ** k):
        coeffs = [(code // p ** i) % p for i in range(k)] + [1]
        poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
        if poly.is_irreducible:
            return coeffs
    raise AssertionError("no irreducible polynomial found")


# --------------------------------------------------------------------------
# constructors


def _cycle(n: int, pts: list[int]) -> tuple[int, ...]:
    out = list(range(n))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        out[a] = b
    return tuple(out)


def cyclic(n: int) -> PermutationGroup:
    _need(n >= 1, f"Z({n})")
    gens = [_cycle(n, list(range(n)))] if n > 1 else []
    return group_from_generators(gens, n, name=f"Z({n})")


def symmetric(n: int) -> PermutationGroup:
    _need(n >= 1, f"Sym({n})")
    gens = []
    if n >= 2:
        gens = [_cycle(n, [0, 1]), _cycle(n, list(range(n)))]
    return group_from_generators(gens, n, name=f"Sym({n})")


def alternating(n: int) -> PermutationGroup:
    _need(n >= 1, f"Alt({n})")
    gens = []
    if n >= 3:
        gens = [_cycle(n, [0, 1, 2])]
        if n > 3:
            gens.append(_cycle(n, list(range(n))) if n % 2 else _cycle(n, list(range(1, n))))
    return group_from_generators(gens, n, name=f"Alt({n})")


def dihedral(order: int) -> PermutationGroup:
    _need(order >= 2 and order % 2 == 0, f"D({order})")
    n = order // 2
    if n == 1:
        return group_from_generators([(1, 0)], 2, name="D(2)")
    if n == 2:
        return group_from_generators([(1, 0, 3, 2), (2, 3, 0, 1)], 4, name="D(4)")
    rot = _cycle(n, list(range(n)))
    ref = tuple((-i) % n for i in range(n))
    return group_from_generators([rot, ref], n, name=f"D({order})")


def dicyclic(order: int) -> PermutationGroup:
    """Q(4n) = <a, b | a^2n, b^2 = a^n, a^b = a^-1>, regular action on 4n points."""
    _need(order >= 8 and order % 4 == 0, f"Q({order})")
    n = order // 4
    m = 2 * n

    def idx(i, j):
        return 2 * (i % m) + j

    def times(i, j, k, l):
        # (a^i b^j)(a^k b^l)
        if j == 0:
            return (i + k) % m, l
        if l == 0:
            return (i - k) % m, 1
        return (i - k + n) % m, 0

    elems = [(i, j) for i in range(m) for j in range(2)]
    gens = []
    for g in [(1, 0), (0, 1)]:
        img = [0] * order
        for (i, j) in elems:
            img[idx(i, j)] = idx(*times(i, j, *g))
        gens.append(tuple(img))
    return group_from_generators(gens, order, name=f"Q({order})")


@functools.lru_cache(maxsize=None)
def _field(q: int) -> GaloisField:
    return GaloisField(q)


def _projective_perm(F: GaloisField, f: Callable[[int | None], int | None]) -> tuple[int, ...]:
    q = F.q
    out = []
    for x in list(range(q)) + [None]:
        y = f(x)
        out.append(q if y is None else y)
    return tuple(out)


def _mobius(F: GaloisField, a, b, c, d):
    """x -> (ax + b) / (cx + d) on the projective line."""
    def f(x):
        if x is None:
            return None if c == 0 else F.mul(a, F.inv(c))
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        if den == 0:
            return None
        return F.mul(num, F.inv(den))
    return _projective_perm(F, f)


def pgl2(q: int) -> PermutationGroup:
    F = _field(q)
    w = F.primitive
    gens = [_mobius(F, 1, 1, 0, 1), _mobius(F, w, 0, 0, 1), _mobius(F, 0, 1, 1, 0)]
    return group_from_generators(gens, q + 1, name=f"PGL(2,{q})")


def psl2(q: int) -> PermutationGroup:
    F = _field(q)
    if q % 2 == 0:
        G = pgl2(q)
        G.name = f"PSL(2,{q})"
        return G
    w2 = F.mul(F.primitive, F.primitive)
    minus_one = F.neg(1)
    gens = [_mobius(F, 1, 1, 0, 1), _mobius(F, w2, 0, 0, 1), _mobius(F, 0, minus_one, 1, 0)]
    return group_from_generators(gens, q + 1, name=f"PSL(2,{q})")


def _need(ok: bool, what: str) -> None:
    if not ok:
        raise UsageError(f"parameter out of range: {what}")


def _prime_power(q: int) -> bool:
    return q >= 2 and len(sympy.factorint(q)) == 1


# name -> (constructor, declared order)
_FAMILIES = {
    "Z": (cyclic, lambda n, _: n),
    "C": (cyclic, lambda n, _: n),
    "Sym": (symmetric, lambda n, _: math.factorial(n)),
    "S": (symmetric, lambda n, _: math.factorial(n)),
    "Alt": (alternating, lambda n, _: max(1, math.factorial(n) // 2)),
    "A": (alternating, lambda n, _: max(1, math.factorial(n) // 2)),
    "D": (dihedral, lambda n, _: n),
    "Q": (dicyclic, lambda n, _: n),
}
_CANON = {"C": "Z", "S": "Sym", "A": "Alt"}
MAX_NATURAL = 10**4


def split_factors(name: str) -> list[str]:
    """Split a product name at top-level "×" or "x"."""
    parts, depth, cur = [], 0, []
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "×x":
            parts.append("".join(cur).strip())
            cur = []
            continue
        cur.append(ch)
    parts.append("".join(cur).strip())
    if any(not p for p in parts):
        raise UsageError(f"malformed group name {name!r}")
    return parts


def _parse_factor(text: str) -> tuple[str, int, int | None]:
    if text.strip() == "1":
        return "Z", 1, None
    m = _FACTOR_RE.match(text)
    if not m:
        raise UsageError(f"unknown group name {text!r}")
    fam, a, b = m.group(1), int(m.group(2)), m.group(3)
    return fam, a, None if b is None else int(b)


def _build_factor(text: str) -> tuple[PermutationGroup, int]:
    fam, a, b = _parse_factor(text)
    if fam in ("PSL", "PGL"):
        _need(a == 2 and b is not None and _prime_power(b), f"{fam}({a},{b})")
        _need(b + 1 <= MAX_NATURAL, f"{fam}(2,{b})")
        full = b * (b - 1) * (b + 1)
        if fam == "PGL":
            return pgl2(b), full
        return psl2(b), full // math.gcd(2, b - 1)
    if fam not in _FAMILIES or b is not None:
        raise UsageError(f"unknown group name {text!r}")
    _need(a <= MAX_NATURAL, f"{fam}({a})")
    ctor, order = _FAMILIES[fam]
    return ctor(a), order(a, b)


def canonical_name(name: str) -> str:
    parts = []
    for p in split_factors(name):
        fam, a, b = _parse_factor(p)
        fam = _CANON.get(fam, fam)
        parts.append(f"{fam}({a})" if b is None else f"{fam}({a},{b})")
    return "×".join(parts)


def build_product(name: str) -> DirectProduct:
    """The group together with its factor embeddings."""
    factors = []
    for part in split_factors(name):
        G, declared = _build_factor(part)
        if G.order != declared:
            raise AssertionError(f"{part}: built order {G.order}, declared {declared}")
        factors.append(G)
    label = canonical_name(name)
    if len(factors) == 1:
        G = factors[0]
        G.name = label
        return DirectProduct(G, (G,), (0,))
    prod = direct_product(*factors, name=label)
    return prod


def build_group(name: str) -> PermutationGroup:
    """Deterministic construction of a named group, order asserted."""
    return build_product(name).group


# --------------------------------------------------------------------------
# normal-subgroup resolution


def resolve_normal(prod: DirectProduct, spec: str) -> Subgroup:
    """Normal subgroup named factor-wise, e.g. ``1×Alt(5)`` inside ``Sym(3)×Alt(5)``.

    Each component names a normal subgroup of the matching factor: ``1``,
    the factor itself, or any name whose normal subgroups of that
    isomorphism type in the factor are unique.  With a single factor the
    request is matched against all normal subgroups of the group.
    """
    parts = split_factors(spec)
    G = prod.group
    if len(parts) != len(prod.factors):
        if len(prod.factors) == 1 or len(parts) == 1:
            return _unique_normal(G, parts[0] if len(parts) == 1 else spec)
        raise UsageError(f"{spec!r} has {len(parts)} components, group has {len(prod.factors)} factors")
    from .perm import join
    N = G.trivial
    for i, (part, F) in enumerate(zip(parts, prod.factors)):
        sub = _unique_normal(F, part)
        if sub.order == 1:
            continue
        emb = prod.embed(i, sub)
        N = join(N, emb.gens)
    return N


def _unique_normal(G: PermutationGroup, part: str) -> Subgroup:
    if part.strip() == "1":
        return G.trivial
    target = build_group(part)
    if target.order == G.order and are_isomorphic(target, G) is not None:
        return G.whole
    lat = all_subgroups(G)
    hits = [lat.subgroups[i] for i in lat.normal_indices()
            if lat.orders[i] == target.order
            and are_isomorphic(lat.subgroups[i].as_group(), target) is not None]
    if not hits:
        raise UsageError(f"no normal subgroup isomorphic to {part} in {G.name or G!r}")
    if len(hits) > 1:
        raise UsageError(f"ambiguous: {len(hits)} normal subgroups isomorphic to {part} in "
                         f"{G.name or G!r}; give the subgroup as a spec file")
    return hits[0]


# --------------------------------------------------------------------------
# standard entries


STANDARD_NAMES = (
    "Z(1)", "Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(7)", "Z(8)", "Z(9)", "Z(10)", "Z(12)",
    "Z(15)", "Z(30)",
    "D(4)", "D(6)", "D(8)", "D(10)", "D(12)", "D(14)", "D(16)", "D(18)", "D(20)", "D(24)",
    "Q(8)", "Q(12)", "Q(16)",
    "Sym(2)", "Sym(3)", "Sym(4)", "Sym(5)", "Sym(6)",
    "Alt(3)", "Alt(4)", "Alt(5)", "Alt(6)",
    "PSL(2,7)", "PGL(2,5)", "PGL(2,7)", "PSL(2,8)", "PSL(2,11)",
    "Z(2)×Z(2)", "Z(2)×Z(2)×Z(2)", "Alt(3)×Alt(3)", "Sym(3)×Z(2)", "Sym(3)×Z(3)",
    "Sym(3)×Sym(3)", "Alt(4)×Z(2)", "Q(8)×Z(3)", "D(8)×Z(3)", "Sym(4)×Z(2)", "Alt(4)×Alt(3)",
    "Sym(3)×Sym(4)", "Alt(5)×Z(2)", "Alt(3)×Alt(5)", "Z(5)×Alt(5)", "Sym(3)×Alt(5)",
    "Sym(5)×Z(3)", "Z(2)×PSL(2,7)", "Sym(5)×Z(5)",
)


def declared_order(name: str) -> int:
    out = 1
    for part in split_factors(name):
        fam, a, b = _parse_factor(part)
        if fam in ("PSL", "PGL"):
            full = b * (b - 1) * (b + 1)
            out *= full if fam == "PGL" else full // math.gcd(2, b - 1)
        else:
            if fam not in _FAMILIES:
                raise UsageError(f"unknown group name {part!r}")
            out *= _FAMILIES[fam][1](a, b)
    return out


def catalog() -> list[CatalogEntry]:
    return [CatalogEntry(n, declared_order(n), functools.partial(build_group, n)) for n in STANDARD_NAMES]


def identify(G: PermutationGroup) -> str | None:
    """Name of a standard catalog group isomorphic to G, if any."""
    for entry in catalog():
        if entry.order == G.order:
            H = entry.build()
            if are_isomorphic(G, H) is not None:
                return entry.name
    return None
