"""Command-line front end.

Exit status: 0 success, 1 theorem violation detected, 2 usage error,
3 cap exceeded.  Every failure prints one line ``error: <kind>: <reason>``
on stderr (and, with ``--json``, an error object on stdout).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .catalog import build_product, catalog, identify, resolve_normal, _unique_normal
from .classes import GroupClassDescriptor, parse_class
from .config import override_caps, parse_cap_overrides
from .errors import CapExceeded, HypothesisFailure, RelmaxError, TheoremViolation, UsageError
from .harness import SUITES, SuiteConfig, parse_suite_config, run_suite
from .perm import PermutationGroup, Subgroup, is_normal, read_group_spec, subgroup_generated
from .reduction import (
    class_flags, full_reduction, h_x, hall_x_classes, isoschematic_equivalent,
    radical_analysis, reduction_check, x_maximal_classes,
)
from .report import emit_report

log = logging.getLogger("relmax")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_NEEDS_CLASS = {"kx", "hallx", "flags", "radical", "reduce", "check-pair", "equiv"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliInvocation:
    subcommand: str
    group: str | None = None
    group_file: str | None = None
    normal: str | None = None
    normal_file: str | None = None
    groups: list[str] = field(default_factory=list)
    family: str | None = None
    primes: str | None = None
    suite: str | None = None
    config: str | None = None
    json: bool = False
    output: str | None = None
    caps: str | None = None
    verbose: int = 0

    @property
    def fmt(self) -> str:
        return "json" if self.json else "human"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--output", "-o", help="write the report to this path")
    common.add_argument("--caps", help="cap overrides, e.g. lattice=5000,table=8000")
    common.add_argument("-v", "--verbose", action="count", default=0)

    cls = _Parser(add_help=False)
    cls.add_argument("--class", dest="family", help="class family (pi, solvable-pi, abelian, ...)")
    cls.add_argument("--primes", help="prime set for the pi-families, e.g. 2,3")

    grp = _Parser(add_help=False)
    src = grp.add_mutually_exclusive_group()
    src.add_argument("--group", help="catalog name, e.g. 'Sym(3)×Alt(5)'")
    src.add_argument("--group-file", help="group spec file (degree line plus generators)")

    p = _Parser(prog="relmax", description="Maximal X-subgroups, Hall X-subgroups and reductions.")
    p.add_argument("--version", action="version", version=f"relmax {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("kx", parents=[common, cls, grp], help="k_X and the X-maximal scheme")
    sub.add_parser("hallx", parents=[common, cls, grp], help="h_X and the Hall X-classes")
    sub.add_parser("flags", parents=[common, cls, grp], help="the E, C, M, D predicates")
    sub.add_parser("radical", parents=[common, cls, grp], help="the radical, computed two ways")
    sub.add_parser("reduce", parents=[common, cls, grp], help="full reduction report")
    cp = sub.add_parser("check-pair", parents=[common, cls, grp], help="compare k_X(G) and k_X(G/N)")
    nsrc = cp.add_mutually_exclusive_group()
    nsrc.add_argument("--normal", help="factor-wise name, e.g. '1×Alt(5)'")
    nsrc.add_argument("--normal-file", help="spec file with generators of N (same degree as G)")
    eq = sub.add_parser("equiv", parents=[common, cls], help="test G1 and G2 for equivalence")
    eq.add_argument("groups", nargs=2, metavar="G", help="catalog name or spec file path")
    su = sub.add_parser("suite", parents=[common], help="run a verification suite")
    su.add_argument("suite", metavar="NAME", help=", ".join(sorted(SUITES)))
    su.add_argument("--config", help="suite configuration file")
    sub.add_parser("catalog", parents=[common], help="list the standard group names")
    return p


def parse_invocation(argv: list[str] | None) -> CliInvocation:
    ns = build_parser().parse_args(argv)
    inv = CliInvocation(**{k: v for k, v in vars(ns).items() if k in CliInvocation.__dataclass_fields__})
    if inv.subcommand in _NEEDS_CLASS and not inv.family:
        raise UsageError(f"{inv.subcommand} needs --class")
    if inv.subcommand in _NEEDS_CLASS - {"equiv"} and not (inv.group or inv.group_file):
        raise UsageError(f"{inv.subcommand} needs --group or --group-file")
    if inv.subcommand == "check-pair" and not (inv.normal or inv.normal_file):
        raise UsageError("check-pair needs --normal or --normal-file")
    return inv


# --------------------------------------------------------------------------
# loading


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(name: str | None, path: str | None):
    """(group, product or None, label)."""
    if path:
        G = read_group_spec(_read(path), name=os.path.basename(path))
        return G, None, G.name
    prod = build_product(name)
    return prod.group, prod, prod.group.name or name


def _load_either(text: str):
    return _load(None, text) if os.path.isfile(text) else _load(text, None)


def _normal(inv: CliInvocation, G: PermutationGroup, prod) -> Subgroup:
    if inv.normal_file:
        H = read_group_spec(_read(inv.normal_file))
        if H.degree != G.degree:
            raise UsageError(f"normal subgroup degree {H.degree} differs from group degree {G.degree}")
        N = subgroup_generated(G, H.generators)
    elif prod is not None:
        N = resolve_normal(prod, inv.normal)
    else:
        N = _unique_normal(G, inv.normal)
    if not is_normal(N):
        raise UsageError("the given subgroup is not normal")
    return N


def _class(inv: CliInvocation) -> GroupClassDescriptor:
    return parse_class(inv.family, inv.primes)


def _subgroup_rows(reps, sizes) -> list[dict]:
    return [{"order": H.order, "class_size": int(s), "generators": [str(g) for g in H.generator_perms()]}
            for H, s in zip(reps, sizes)]


def _reduction_info(G: PermutationGroup, X: GroupClassDescriptor) -> dict:
    Q, _ = full_reduction(G, X)
    return {"order": Q.order, "iso_name": identify(Q) if Q.order <= 2000 else None}


# --------------------------------------------------------------------------
# dispatch


def dispatch(inv: CliInvocation) -> int:
    cmd = inv.subcommand
    if cmd == "catalog":
        entries = [{"name": e.name, "order": e.order, "degree": e.build().degree} for e in catalog()]
        emit_report("catalog", {"entries": entries}, inv.fmt, inv.output)
        return EXIT_OK
    if cmd == "suite":
        cfg = parse_suite_config(_read(inv.config)) if inv.config else SuiteConfig()
        if inv.caps:
            cfg.caps = {**cfg.caps, **parse_cap_overrides(inv.caps)}
        res = run_suite(inv.suite, cfg)
        emit_report("suite", res.to_json(), inv.fmt, inv.output or cfg.output)
        return EXIT_OK if res.passed else EXIT_VIOLATION

    X = _class(inv)
    if cmd == "equiv":
        (G1, _, n1), (G2, _, n2) = (_load_either(t) for t in inv.groups)
        payload = {"groups": [n1, n2], "class_spec": X.label,
                   "equivalent": isoschematic_equivalent(G1, G2, X),
                   "reductions": [_reduction_info(G1, X), _reduction_info(G2, X)]}
        emit_report("equiv", payload, inv.fmt, inv.output)
        return EXIT_OK

    G, prod, label = _load(inv.group, inv.group_file)
    base = {"group": label, "class_spec": X.label}
    if cmd == "kx":
        sch = x_maximal_classes(G, X)
        emit_report("kx", {**base, "k": sch.k, "scheme": _subgroup_rows(sch.class_reps, sch.class_sizes)},
                    inv.fmt, inv.output)
    elif cmd == "hallx":
        hd = hall_x_classes(G, X)
        emit_report("hallx", {**base, "h": hd.h, "classes": _subgroup_rows(hd.class_reps, hd.class_sizes)},
                    inv.fmt, inv.output)
    elif cmd == "flags":
        emit_report("flags", {**base, "flags": class_flags(G, X).to_json()}, inv.fmt, inv.output)
    elif cmd == "radical":
        rep = radical_analysis(G, X)
        emit_report("radical", {**base, "radical_order": rep.route_a.order, "routes_agree": rep.agree,
                                "generators": [str(g) for g in rep.route_a.generator_perms()],
                                "pairs": [r.to_json(rep.k) for r in rep.rows]}, inv.fmt, inv.output)
        if X.complete and not rep.ok:
            raise TheoremViolation(f"radical checks failed: agree={rep.agree}, (i)={rep.cor3_i}, "
                                   f"(ii)={rep.cor3_ii}, (iii)={rep.cor3_iii}")
    elif cmd == "reduce":
        rep = radical_analysis(G, X)
        payload = {**base, "k": rep.k, "h": h_x(G, X), "flags": class_flags(G, X).to_json(),
                   "radical_order": rep.route_a.order, "full_reduction": _reduction_info(G, X),
                   "pairs": [r.to_json(rep.k) for r in rep.rows]}
        emit_report("reduce", payload, inv.fmt, inv.output)
    elif cmd == "check-pair":
        rep = reduction_check(G, _normal(inv, G, prod), X)
        payload = rep.to_json()
        payload["group"] = label
        emit_report("check-pair", payload, inv.fmt, inv.output)
        if rep.violation:
            return EXIT_VIOLATION
    return EXIT_OK


def _fail(inv: CliInvocation | None, exc: Exception, code: int) -> int:
    reason = " ".join(str(exc).split()) or type(exc).__name__
    kind = getattr(exc, "kind", "error")
    sys.stderr.write(f"error: {kind}: {reason}\n")
    if inv is not None and inv.json and not inv.output:
        sys.stdout.write(json.dumps({"error": kind, "reason": reason}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    inv = None
    try:
        inv = parse_invocation(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(inv.verbose, 2),
                            format="%(levelname)s %(name)s: %(message)s")
        caps = parse_cap_overrides(inv.caps) if inv.caps else {}
        with override_caps(**caps):
            return dispatch(inv)
    except TheoremViolation as exc:
        return _fail(inv, exc, EXIT_VIOLATION)
    except CapExceeded as exc:
        return _fail(inv, exc, EXIT_CAP)
    except (UsageError, HypothesisFailure) as exc:
        return _fail(inv, exc, EXIT_USAGE)
    except RelmaxError as exc:
        return _fail(inv, exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
