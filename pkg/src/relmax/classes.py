"""Decidable classes of finite groups.

Every descriptor is closed data: a family name plus, for the pi-families, a
prime set.  Membership is decided from isomorphism invariants (order,
composition factors, abelian/nilpotent flags), so it is the same for
conjugate or isomorphic subgroups.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import sympy

from .errors import UsageError
from .lattice import Profile, SimpleFactorDescriptor, all_subgroups, profile
from .perm import PermutationGroup, Subgroup, quotient_by

FAMILIES = ("all", "trivial", "pi", "solvable-pi", "pi-separable", "pi-solvable",
            "abelian", "nilpotent")
COMPLETE_FAMILIES = frozenset(FAMILIES[:6])
PI_FAMILIES = frozenset({"pi", "solvable-pi", "pi-separable", "pi-solvable"})
# prime support is unbounded for these; only used when a finite set is shown
PRIME_DISPLAY_BOUND = 100

_ALIASES = {
    "trivial-only": "trivial",
    "pi-groups": "pi",
    "solvable-pi-groups": "solvable-pi",
    "solvable": "solvable-pi",
}


@dataclass(frozen=True)
class GroupClassDescriptor:
    family: str
    primes: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        fam = _ALIASES.get(self.family, self.family)
        if fam not in FAMILIES:
            raise UsageError(f"unknown class family {self.family!r}")
        object.__setattr__(self, "family", fam)
        primes = frozenset(int(p) for p in self.primes)
        if fam in PI_FAMILIES:
            if not primes:
                raise UsageError(f"class {fam} needs a nonempty prime set")
            bad = sorted(p for p in primes if not sympy.isprime(p))
            if bad:
                raise UsageError(f"not prime: {', '.join(map(str, bad))}")
        elif primes:
            raise UsageError(f"class {fam} takes no primes")
        object.__setattr__(self, "primes", primes)

    @property
    def complete(self) -> bool:
        return self.family in COMPLETE_FAMILIES

    @property
    def label(self) -> str:
        if self.family in PI_FAMILIES:
            return f"{self.family}{{{','.join(map(str, sorted(self.primes)))}}}"
        return self.family

    def __str__(self):
        return self.label

    def to_json(self) -> dict:
        return {"family": self.family, "primes": sorted(self.primes), "complete": self.complete}

    # -- prime support ----------------------------------------------------

    def covers(self, p: int) -> bool:
        """True if the prime p lies in pi(X)."""
        if self.family == "trivial":
            return False
        if self.family in ("pi", "solvable-pi"):
            return p in self.primes
        # all, abelian, nilpotent contain every Z_p; the separable and
        # solvable variants contain every pi'-group as well
        return True

    def char_primes(self, bound: int = PRIME_DISPLAY_BOUND) -> frozenset[int]:
        """pi(X), truncated to primes below ``bound`` when it is infinite."""
        if self.family in ("pi", "solvable-pi"):
            return self.primes
        if self.family == "trivial":
            return frozenset()
        return frozenset(sympy.primerange(2, bound))

    def is_x_prime_order(self, n: int) -> bool:
        """Membership of any group of order n in X' (no nontrivial X-subgroup)."""
        return not any(self.covers(p) for p in sympy.primefactors(n))

    # -- membership -------------------------------------------------------

    def _factor_ok(self, f: SimpleFactorDescriptor) -> bool:
        fam, pi = self.family, self.primes
        if fam == "all":
            return True
        if fam == "trivial":
            return False
        inside = f.primes <= pi
        if fam == "pi":
            return inside
        if fam == "solvable-pi":
            return inside and f.abelian
        outside = not (f.primes & pi)
        if fam == "pi-separable":
            return inside or outside
        if fam == "pi-solvable":
            return (inside and f.abelian) or outside
        raise UsageError(f"class {fam} is not determined by composition factors")

    def contains_factors(self, factors: Iterable[SimpleFactorDescriptor]) -> bool:
        """Membership from a composition-factor multiset (complete families only)."""
        return all(self._factor_ok(f) for f in factors)

    def contains_profile(self, prof: Profile) -> bool:
        if self.family == "abelian":
            return prof.abelian
        if self.family == "nilpotent":
            return prof.nilpotent
        if self.family == "trivial":
            return prof.order == 1
        return self.contains_factors(prof.factors)

    def contains(self, H) -> bool:
        return self.contains_profile(profile(H))

    __contains__ = contains


def parse_class(family: str, primes: str | Iterable[int] | None = None) -> GroupClassDescriptor:
    """Descriptor from CLI-style arguments, e.g. ``("pi", "2,3")``."""
    if isinstance(primes, str):
        text = primes.strip().strip("{}")
        try:
            primes = [int(p) for p in text.replace(" ", "").split(",") if p]
        except ValueError:
            raise UsageError(f"bad prime list {primes!r}") from None
    return GroupClassDescriptor(family, frozenset(primes or ()))


def parse_class_label(text: str) -> GroupClassDescriptor:
    """Inverse of ``GroupClassDescriptor.label``: ``pi{2,3}`` or ``abelian``."""
    text = text.strip()
    if "{" in text:
        fam, _, rest = text.partition("{")
        return parse_class(fam, rest.rstrip("}"))
    if ":" in text:
        fam, _, rest = text.partition(":")
        return parse_class(fam, rest)
    return parse_class(text)


def require_complete(X: GroupClassDescriptor) -> None:
    if not X.complete:
        raise UsageError(f"class {X.label} is not complete")


def is_x_separable(G, X: GroupClassDescriptor) -> bool:
    """Every composition factor is an X-group or an X'-group."""
    require_complete(X)
    prof = profile(G)
    return all(X.contains_factors([f]) or X.is_x_prime_order(f.order) for f in prof.factors)


def x_prime_by_definition(G: PermutationGroup, X: GroupClassDescriptor) -> bool:
    """X' membership straight from the definition: no nontrivial X-subgroup."""
    lat = all_subgroups(G)
    return not any(X.contains_profile(lat.class_profile(c)) for c in range(1, lat.num_classes))


# --------------------------------------------------------------------------
# closure audit


@dataclass
class ClosureAudit:
    cls: str
    subgroup_closed: bool = True
    quotient_closed: bool = True
    extension_closed: bool = True
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return self.subgroup_closed and self.quotient_closed and self.extension_closed

    def to_json(self) -> dict:
        return {
            "class": self.cls,
            "subgroup_closed": self.subgroup_closed,
            "quotient_closed": self.quotient_closed,
            "extension_closed": self.extension_closed,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }


def _section_profile(lat, i: int, j: int) -> Profile:
    """Profile of subgroup_i / subgroup_j for j normal in i, by materializing."""
    H, M = lat.subgroups[i], lat.subgroups[j]
    if M.order == 1:
        return lat.profile_of(i)
    if M.order == H.order:
        return profile(lat.ambient.trivial)
    HG = H.as_group()
    sub = Subgroup(HG, sorted(HG.index[lat.ambient.elements[e]] for e in M.elements),
                   [HG.index[lat.ambient.elements[g]] for g in M.gens])
    Q, _ = quotient_by(HG, sub)
    return profile(Q)


def closure_audit(X: GroupClassDescriptor, corpus: Iterable[PermutationGroup],
                  max_counterexamples: int = 20) -> ClosureAudit:
    """Empirical check of subgroup, quotient and extension closure.

    Every subgroup H of every corpus group is examined up to conjugacy,
    together with each normal subgroup M of H:

    * H in X requires M in X and H/M in X;
    * M in X and H/M in X requires H in X;
    * H in X requires every subgroup of H in X.
    """
    report = ClosureAudit(X.label)
    if X.family == "trivial":
        return report

    def note(kind: str, G, detail: str):
        if len(report.counterexamples) < max_counterexamples:
            report.counterexamples.append({"kind": kind, "group": G.name or repr(G), "detail": detail})

    for G in corpus:
        lat = all_subgroups(G)
        for c in range(lat.num_classes):
            i = lat.rep_index(c)
            H_in = X.contains_profile(lat.class_profile(c))
            ho = int(lat.orders[i])
            if H_in:
                for j in lat.sub_indices(i):
                    report.checked += 1
                    if not X.contains_profile(lat.profile_of(j)):
                        report.subgroup_closed = False
                        note("subgroup", G, f"order-{lat.orders[j]} subgroup of order-{ho} member")
            for j in lat.normal_within(i):
                if j == i or lat.orders[j] == 1:
                    continue
                report.checked += 1
                M_in = X.contains_profile(lat.profile_of(j))
                Q_in = X.contains_profile(_section_profile(lat, i, j))
                if H_in and not Q_in:
                    report.quotient_closed = False
                    note("quotient", G, f"order-{ho} member with non-member quotient by order {lat.orders[j]}")
                if M_in and Q_in and not H_in:
                    report.extension_closed = False
                    note("extension", G, f"order-{ho} non-member with normal member of order "
                                         f"{lat.orders[j]} and member quotient")
    return report
