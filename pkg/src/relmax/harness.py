"""Corpus construction and verification suites.

A suite runs one family of checks over every (group, class) instance of a
corpus and returns a SuiteResult; violations carry enough context to
reproduce the failing computation from the command line.
"""
from __future__ import annotations

import concurrent.futures
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .catalog import STANDARD_NAMES, build_group, declared_order
from .classes import GroupClassDescriptor, closure_audit, parse_class_label
from .config import override_caps, parse_cap_overrides
from .errors import CapExceeded, HypothesisFailure, TheoremViolation, UsageError
from .lattice import all_subgroups, are_isomorphic, fingerprint
from .perm import PermutationGroup, intersection
from .reduction import (
    aut_product_check, frattini_witness, full_reduction, hall_inheritance_check,
    hall_x_classes, isoschematism_analysis, k_x, lift_x_subgroup, normal_pair_rows,
    overgroup_criterion_check, proof_step_check, quotient_data, radical_analysis,
    reduction_check, simple_class_number_survey, simple_direct_factors,
)

SIMPLE_SURVEY = ("Alt(5)", "PSL(2,7)", "Alt(6)", "PSL(2,8)", "PSL(2,11)")
SHOWCASE = ("Z(2)×PSL(2,7)", "PGL(2,7)")
DESK_PRIMES = (2, 3, 5, 7)
# the theorem corpus bound; Sym(6) is added explicitly
THEOREM_ORDER_BOUND = 360


def tier_names(tier: int) -> list[str]:
    """Catalog names per corpus tier, sorted by (order, name)."""
    if tier == 1:
        names = [n for n in STANDARD_NAMES if declared_order(n) <= THEOREM_ORDER_BOUND or n == "Sym(6)"]
    elif tier == 2:
        names = [n for n in STANDARD_NAMES if declared_order(n) <= 2000]
    elif tier == 3:
        names = list(SHOWCASE)
    else:
        raise UsageError(f"unknown corpus tier {tier}")
    return sorted(names, key=lambda n: (declared_order(n), n))


def complete_classes(primes: Iterable[int] = DESK_PRIMES) -> list[GroupClassDescriptor]:
    """pi, solvable-pi, pi-separable and pi-solvable over every nonempty subset."""
    primes = sorted(primes)
    out = []
    for r in range(1, len(primes) + 1):
        for sub in itertools.combinations(primes, r):
            for fam in ("pi", "solvable-pi", "pi-separable", "pi-solvable"):
                out.append(GroupClassDescriptor(fam, frozenset(sub)))
    return out


SUITES: dict[str, Callable] = {}


def _suite(name: str):
    def deco(fn):
        SUITES[name] = fn
        return fn
    return deco


@dataclass
class SuiteConfig:
    tier: int = 1
    classes: list[GroupClassDescriptor] | None = None
    corpus: list[str] | None = None
    max_order: int | None = None
    caps: dict = field(default_factory=dict)
    output: str | None = None
    jobs: int = 1

    def names(self, default_tier: int | None = None) -> list[str]:
        names = self.corpus if self.corpus is not None else tier_names(default_tier or self.tier)
        if self.max_order is not None:
            names = [n for n in names if declared_order(n) <= self.max_order]
        return sorted(names, key=lambda n: (declared_order(n), n))

    def class_list(self) -> list[GroupClassDescriptor]:
        return list(self.classes) if self.classes is not None else complete_classes()


def parse_suite_config(text: str) -> SuiteConfig:
    """Key = value lines: tier, classes, corpus, max_order, caps, output, jobs."""
    cfg = SuiteConfig()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise UsageError(f"bad config line {raw!r}")
        key, val = key.strip().lower(), val.strip()
        if key == "tier":
            cfg.tier = int(val)
        elif key == "classes":
            cfg.classes = None if val == "default" else [parse_class_label(v) for v in val.split(";") if v.strip()]
        elif key == "corpus":
            cfg.corpus = [v.strip() for v in val.split(";") if v.strip()]
        elif key == "max_order":
            cfg.max_order = int(val)
        elif key == "caps":
            cfg.caps = parse_cap_overrides(val)
        elif key == "output":
            cfg.output = val
        elif key == "jobs":
            cfg.jobs = max(1, int(val))
        else:
            raise UsageError(f"unknown config key {key!r}")
    return cfg


@dataclass
class SuiteResult:
    suite: str
    instances: int = 0
    violations: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: SuiteResult) -> None:
        self.instances += other.instances
        self.violations += other.violations
        self.skipped += other.skipped
        self.notes += other.notes

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "violations": self.violations,
            "skipped": self.skipped,
            "notes": self.notes,
            "elapsed": round(self.elapsed, 3),
        }


def run_suite(suite: str, config: SuiteConfig | None = None) -> SuiteResult:
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; known: {', '.join(sorted(SUITES))}")
    config = config or SuiteConfig()
    t0 = time.perf_counter()
    with override_caps(**config.caps):
        fn = SUITES[suite]
        if getattr(fn, "per_group", False) and config.jobs > 1:
            result = _run_parallel(suite, config)
        else:
            result = fn(config)
    result.elapsed = time.perf_counter() - t0
    return result


def _per_group(default_tier: int = 1):
    """Suite whose instances are independent per corpus group."""
    def deco(fn):
        def run(config: SuiteConfig) -> SuiteResult:
            out = SuiteResult(fn.__name__.replace("_", "-"))
            for name in config.names(default_tier):
                out.merge(_guarded(fn, name, config))
            return out
        run.per_group = True
        run.group_fn = fn
        run.default_tier = default_tier
        return run
    return deco


def _guarded(fn, name: str, config: SuiteConfig) -> SuiteResult:
    part = SuiteResult(fn.__name__)
    try:
        G = build_group(name)
        fn(G, name, config, part)
    except CapExceeded as exc:
        part.skipped.append({"group": name, "reason": f"cap-exceeded: {exc}"})
    except TheoremViolation as exc:
        part.violations.append({"group": name, "kind": "theorem-violation", "detail": str(exc)})
    return part


def _worker(suite: str, name: str, config: SuiteConfig) -> SuiteResult:
    with override_caps(**config.caps):
        return _guarded(SUITES[suite].group_fn, name, config)


def _run_parallel(suite: str, config: SuiteConfig) -> SuiteResult:
    fn = SUITES[suite]
    names = config.names(fn.default_tier)
    out = SuiteResult(suite)
    with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as pool:
        parts = list(pool.map(_worker, [suite] * len(names), names, [config] * len(names)))
    for part in parts:
        out.merge(part)
    return out


def _pairs(G: PermutationGroup):
    lat = all_subgroups(G)
    return [lat.subgroups[i] for i in lat.normal_indices()]


# --------------------------------------------------------------------------
# suites


@_suite("theorem1")
@_per_group()
def theorem1(G, name, config, out):
    for N in _pairs(G):
        for X in config.class_list():
            out.instances += 1
            rep = reduction_check(G, N, X)
            if rep.violation:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "report": rep.to_json()})


@_suite("corollary2")
@_per_group()
def corollary2(G, name, config, out):
    for X in config.class_list():
        kG = k_x(G, X)
        for row in normal_pair_rows(G, X):
            if row.k_normal > 1:
                out.instances += 1
                if not kG > row.k_quotient:
                    out.violations.append({"group": name, "normal_order": row.normal.order,
                                           "class": X.label, "k_G": kG, "k_quotient": row.k_quotient,
                                           "k_normal": row.k_normal})


@_suite("corollary3")
@_per_group()
def corollary3(G, name, config, out):
    for X in config.class_list():
        out.instances += 1
        rep = radical_analysis(G, X)
        for kind, ok in (("radical-agreement", rep.agree), ("property-i", rep.cor3_i),
                         ("property-ii", rep.cor3_ii), ("property-iii", rep.cor3_iii)):
            if ok is False:
                out.violations.append({"group": name, "class": X.label, "kind": kind,
                                       "route_a_order": rep.route_a.order,
                                       "route_b_order": rep.route_b.order})


@_suite("corollary4")
@_per_group()
def corollary4(G, name, config, out):
    for N in _pairs(G):
        for X in config.class_list():
            out.instances += 1
            rep = overgroup_criterion_check(G, N, X)
            if not rep.consistent:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "lhs": rep.lhs, "rhs": rep.rhs, "violators": rep.violators})


@_suite("proposition1-iso")
@_per_group()
def proposition1_iso(G, name, config, out):
    for N in _pairs(G):
        for X in config.class_list():
            out.instances += 1
            rep = isoschematism_analysis(G, N, X)
            if not rep.consistent:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "k_equal": rep.k_equal, "canonical": rep.canonical,
                                       "some": rep.some, "every": rep.every})
            if not rep.kernel_factors_agree:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "kind": "kernel-factors-differ", "pairs": rep.kernel_witnesses})
            if rep.kernel_witnesses:
                out.notes.append({"group": name, "normal_order": N.order, "class": X.label,
                                  "kind": "non-isomorphic-kernels",
                                  "pairs": rep.kernel_witnesses})


@_suite("lemma1-lift")
@_per_group()
def lemma1_lift(G, name, config, out):
    for N in _pairs(G):
        Q, phi = quotient_data(G, N)
        latq = all_subgroups(Q)
        for X in config.class_list():
            for c in range(latq.num_classes):
                K = latq.rep(c)
                if not X.contains_profile(latq.class_profile(c)):
                    continue
                out.instances += 1
                H = lift_x_subgroup(phi, K, X)
                if not X.contains(H) or phi.image(H) != K:
                    out.violations.append({"group": name, "normal_order": N.order,
                                           "class": X.label, "image_order": K.order})


@_suite("lemma2-hall")
@_per_group()
def lemma2_hall(G, name, config, out):
    for N in _pairs(G):
        for X in config.class_list():
            out.instances += 1
            rep = hall_inheritance_check(G, N, X)
            if not rep.ok:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "problems": rep.problems})


@_suite("proof-steps")
@_per_group()
def proof_steps(G, name, config, out):
    for N in _pairs(G):
        Q, _ = quotient_data(G, N)
        for X in config.class_list():
            if k_x(G, X) != k_x(Q, X):
                continue
            out.instances += 1
            problems = proof_step_check(G, N, X)
            if problems:
                out.violations.append({"group": name, "normal_order": N.order, "class": X.label,
                                       "problems": problems})


def frattini_instances(G: PermutationGroup, X: GroupClassDescriptor):
    """(A, N) pairs of normal subgroups meeting the hypotheses of the witness search."""
    normals = _pairs(G)
    halls = hall_x_classes(G, X).class_reps
    for N in normals:
        if N.order == 1 or simple_direct_factors(N) is None:
            continue
        for A in normals:
            if not N <= A:
                continue
            if any(K <= A and K.order * N.order // intersection(K, N).order == A.order for K in halls):
                yield A, N


@_suite("frattini")
@_per_group(default_tier=2)
def frattini(G, name, config, out):
    for X in config.class_list():
        for A, N in frattini_instances(G, X):
            out.instances += 1
            try:
                L = frattini_witness(G, A, N, X)
            except HypothesisFailure as exc:
                out.violations.append({"group": name, "class": X.label, "kind": "hypothesis-failure",
                                       "detail": str(exc)})
                continue
            except TheoremViolation as exc:
                out.violations.append({"group": name, "class": X.label, "A_order": A.order,
                                       "N_order": N.order, "kind": "no-witness", "detail": str(exc)})
                continue
            out.notes.append({"group": name, "class": X.label, "A_order": A.order,
                              "N_order": N.order, "L_order": L.order})


@_suite("lemma5-aut")
@_per_group(default_tier=2)
def lemma5_aut(G, name, config, out):
    lat = all_subgroups(G)
    for N in _pairs(G):
        factors = simple_direct_factors(N)
        if not factors:
            continue
        supplements = [lat.rep(c) for c in range(lat.num_classes)
                       if lat.rep(c).order * N.order // intersection(lat.rep(c), N).order == G.order]
        for S in factors:
            for K in supplements:
                out.instances += 1
                rep = aut_product_check(G, N, S, K)
                if not rep.ok:
                    out.violations.append({"group": name, "N_order": N.order, "S_order": S.order,
                                           "K_order": K.order, "normalizer_ok": rep.normalizer_ok,
                                           "aut_ok": rep.aut_ok})


@_suite("class-numbers")
def class_numbers(config: SuiteConfig) -> SuiteResult:
    out = SuiteResult("class-numbers")
    names = config.corpus if config.corpus is not None else list(SIMPLE_SURVEY)
    for name in names:
        try:
            table = simple_class_number_survey(build_group(name))
        except CapExceeded as exc:
            out.skipped.append({"group": name, "reason": f"cap-exceeded: {exc}"})
            continue
        for row in table.rows:
            out.instances += 1
            entry = {"group": name, "primes": list(row.primes), "hall_exists": row.hall_exists,
                     "h": row.h, "h_solvable": row.h_solvable}
            out.notes.append(entry)
            if not row.ok:
                out.violations.append(entry)
    return out


@_suite("closure-audit")
def closure_audit_suite(config: SuiteConfig) -> SuiteResult:
    out = SuiteResult("closure-audit")
    names = config.names()
    corpus = [build_group(n) for n in names]
    classes = config.class_list() + [GroupClassDescriptor("abelian"), GroupClassDescriptor("nilpotent")]
    for X in classes:
        out.instances += 1
        rep = closure_audit(X, corpus)
        data = rep.to_json()
        if X.complete and not rep.closed:
            out.violations.append(data)
        elif not X.complete:
            out.notes.append(data)
    return out


@_suite("counterexample-noncomplete")
def counterexample_noncomplete(config: SuiteConfig) -> SuiteResult:
    out = SuiteResult("counterexample-noncomplete")
    G = build_group("Sym(3)")
    lat = all_subgroups(G)
    N = next(lat.subgroups[i] for i in lat.normal_indices() if lat.orders[i] == 3)
    for fam in ("abelian", "nilpotent"):
        X = GroupClassDescriptor(fam)
        out.instances += 1
        rep = reduction_check(G, N, X)
        expected = (rep.k_G, rep.k_N, rep.k_quotient) == (2, 1, 1)
        entry = {"class": fam, "k_G": rep.k_G, "k_normal": rep.k_N, "k_quotient": rep.k_quotient,
                 "cause": rep.cause}
        out.notes.append(entry)
        if not expected or rep.cause != "class-not-complete":
            out.violations.append(entry)
    return out


@_suite("corollary6")
def corollary6(config: SuiteConfig) -> SuiteResult:
    """Equivalence axioms for the isoschematic relation, read definitionally.

    G1 and G2 are related when some isoschematic images of the two are
    isomorphic.  Images are grouped into isomorphism types once, so the
    relation becomes "the type sets intersect".  It must agree with
    "full reductions isomorphic", be transitive, and each class must hold
    one fully reduced type.
    """
    out = SuiteResult("corollary6")
    names = config.names()
    groups = [build_group(n) for n in names]
    for X in config.class_list():
        registry = _TypeRegistry()
        images, reduced_type, fully_reduced = [], [], []
        for G in groups:
            kG = k_x(G, X)
            types = set()
            for row in normal_pair_rows(G, X):
                if row.k_quotient == kG:
                    types.add(registry.type_of(quotient_data(G, row.normal)[0]))
            images.append(types)
            Q, _ = full_reduction(G, X)
            reduced_type.append(registry.type_of(Q))
            fully_reduced.append(radical_analysis(G, X, deep=False).route_a.order == 1)
        n = len(groups)
        rel = [[bool(images[a] & images[b]) for b in range(n)] for a in range(n)]
        for a in range(n):
            out.instances += 1
            if not rel[a][a] or reduced_type[a] not in images[a]:
                out.violations.append({"class": X.label, "kind": "reflexive", "group": names[a]})
            for b in range(n):
                if rel[a][b] != rel[b][a]:
                    out.violations.append({"class": X.label, "kind": "symmetric",
                                           "groups": [names[a], names[b]]})
                if rel[a][b] != (reduced_type[a] == reduced_type[b]):
                    out.violations.append({"class": X.label, "kind": "reduction-mismatch",
                                           "groups": [names[a], names[b]]})
                if rel[a][b]:
                    for c in range(n):
                        if rel[b][c] and not rel[a][c]:
                            out.violations.append({"class": X.label, "kind": "transitive",
                                                   "groups": [names[a], names[b], names[c]]})
        # one fully reduced isomorphism type per class
        for a in range(n):
            for b in range(n):
                if rel[a][b] and fully_reduced[a] and fully_reduced[b] and \
                        registry.type_of(groups[a]) != registry.type_of(groups[b]):
                    out.violations.append({"class": X.label, "kind": "two-reduced-types",
                                           "groups": [names[a], names[b]]})
    return out


class _TypeRegistry:
    """Isomorphism types, bucketed by fingerprint."""

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[PermutationGroup, int]]] = {}
        self._count = 0
        self._seen: dict[int, int] = {}
        self._keep: list[PermutationGroup] = []  # keeps ids in _seen valid

    def type_of(self, G: PermutationGroup) -> int:
        if id(G) in self._seen:
            return self._seen[id(G)]
        fp = fingerprint(G)
        bucket = self._buckets.setdefault(fp, [])
        for H, t in bucket:
            if are_isomorphic(G, H) is not None:
                self._seen[id(G)] = t
                self._keep.append(G)
                return t
        t = self._count
        self._count += 1
        self._keep.append(G)
        bucket.append((G, t))
        self._seen[id(G)] = t
        return t
