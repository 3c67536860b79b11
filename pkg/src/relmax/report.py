"""Report payloads, their JSON schemas, and column-aligned text rendering."""
from __future__ import annotations

import json
import sys
from typing import Any

import jsonschema

from .errors import UsageError

_BOOL = {"type": "boolean"}
_INT = {"type": "integer", "minimum": 0}
_STR = {"type": "string"}
_NULLABLE_BOOL = {"type": ["boolean", "null"]}

_SUBGROUP = {
    "type": "object",
    "required": ["order", "class_size", "generators"],
    "properties": {"order": _INT, "class_size": _INT,
                   "generators": {"type": "array", "items": _STR}},
}

_PAIR = {
    "type": "object",
    "required": ["normal_order", "k_quotient", "k_normal", "equality", "consistent"],
    "properties": {"normal_order": _INT, "k_quotient": _INT, "k_normal": _INT,
                   "equality": _BOOL, "consistent": _BOOL},
}

_FLAGS = {
    "type": "object",
    "required": ["E", "C", "M", "D"],
    "properties": {k: _BOOL for k in "ECMD"},
    "additionalProperties": False,
}

GROUP_REPORT = {
    "type": "object",
    "required": ["group", "class_spec", "k", "h", "flags", "radical_order", "full_reduction", "pairs"],
    "properties": {
        "group": _STR,
        "class_spec": _STR,
        "k": _INT,
        "h": _INT,
        "flags": _FLAGS,
        "radical_order": _INT,
        "full_reduction": {
            "type": "object",
            "required": ["order"],
            "properties": {"order": _INT, "iso_name": {"type": ["string", "null"]}},
        },
        "pairs": {"type": "array", "items": _PAIR},
    },
}

SCHEMAS: dict[str, dict] = {
    "kx": {
        "type": "object",
        "required": ["group", "class_spec", "k", "scheme"],
        "properties": {"group": _STR, "class_spec": _STR, "k": _INT,
                       "scheme": {"type": "array", "items": _SUBGROUP}},
    },
    "hallx": {
        "type": "object",
        "required": ["group", "class_spec", "h", "classes"],
        "properties": {"group": _STR, "class_spec": _STR, "h": _INT,
                       "classes": {"type": "array", "items": _SUBGROUP}},
    },
    "flags": {
        "type": "object",
        "required": ["group", "class_spec", "flags"],
        "properties": {"group": _STR, "class_spec": _STR, "flags": _FLAGS},
    },
    "radical": {
        "type": "object",
        "required": ["group", "class_spec", "radical_order", "routes_agree", "generators", "pairs"],
        "properties": {"group": _STR, "class_spec": _STR, "radical_order": _INT,
                       "routes_agree": _BOOL, "generators": {"type": "array", "items": _STR},
                       "pairs": {"type": "array", "items": _PAIR}},
    },
    "reduce": GROUP_REPORT,
    "check-pair": {
        "type": "object",
        "required": ["group", "class_spec", "normal_order", "k_G", "k_quotient", "k_normal",
                     "equality", "consistent", "scheme_bijection_ok", "violation"],
        "properties": {"group": _STR, "class_spec": _STR, "normal_order": _INT, "k_G": _INT,
                       "k_quotient": _INT, "k_normal": _INT, "equality": _BOOL,
                       "consistent": _BOOL, "scheme_bijection_ok": _NULLABLE_BOOL,
                       "image_containment_ok": _BOOL, "monotone_ok": _BOOL,
                       "complete": _BOOL, "cause": {"type": ["string", "null"]},
                       "violation": _BOOL, "witnesses": {"type": "array", "items": _STR}},
    },
    "equiv": {
        "type": "object",
        "required": ["groups", "class_spec", "equivalent", "reductions"],
        "properties": {
            "groups": {"type": "array", "items": _STR, "minItems": 2, "maxItems": 2},
            "class_spec": _STR,
            "equivalent": _BOOL,
            "reductions": {"type": "array", "items": {
                "type": "object", "required": ["order"],
                "properties": {"order": _INT, "iso_name": {"type": ["string", "null"]}}}},
        },
    },
    "suite": {
        "type": "object",
        "required": ["suite", "passed", "instances", "violations", "skipped", "elapsed"],
        "properties": {"suite": _STR, "passed": _BOOL, "instances": _INT,
                       "violations": {"type": "array"}, "skipped": {"type": "array"},
                       "notes": {"type": "array"}, "elapsed": {"type": "number", "minimum": 0}},
    },
    "catalog": {
        "type": "object",
        "required": ["entries"],
        "properties": {"entries": {"type": "array", "items": {
            "type": "object", "required": ["name", "order", "degree"],
            "properties": {"name": _STR, "order": _INT, "degree": _INT}}}},
    },
    "error": {
        "type": "object",
        "required": ["error", "reason"],
        "properties": {"error": _STR, "reason": _STR},
    },
}


def validate(kind: str, payload: dict) -> None:
    jsonschema.validate(payload, SCHEMAS[kind])


# --------------------------------------------------------------------------
# text rendering


def table(headers: list[str], rows: list[list[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return str(v)


def render_human(kind: str, p: dict) -> str:
    if kind == "kx":
        head = f"{p['group']}  class {p['class_spec']}  k = {p['k']}"
        return head + "\n" + table(["order", "class size", "generators"],
                                   [[s["order"], s["class_size"], s["generators"]] for s in p["scheme"]])
    if kind == "hallx":
        head = f"{p['group']}  class {p['class_spec']}  h = {p['h']}"
        return head + "\n" + table(["order", "class size", "generators"],
                                   [[s["order"], s["class_size"], s["generators"]] for s in p["classes"]])
    if kind == "flags":
        f = p["flags"]
        return f"{p['group']}  class {p['class_spec']}\n" + table(["E", "C", "M", "D"], [[f[k] for k in "ECMD"]])
    if kind in ("radical", "reduce"):
        lines = [f"{p['group']}  class {p['class_spec']}  radical order {p['radical_order']}"]
        if kind == "reduce":
            fr = p["full_reduction"]
            lines.append(f"k = {p['k']}  h = {p['h']}  full reduction order {fr['order']}"
                         + (f" ({fr['iso_name']})" if fr.get("iso_name") else ""))
        else:
            lines.append(f"routes agree: {_cell(p['routes_agree'])}")
        lines.append(table(["|N|", "k(G/N)", "k(N)", "equal", "consistent"],
                           [[r["normal_order"], r["k_quotient"], r["k_normal"], r["equality"],
                             r["consistent"]] for r in p["pairs"]]))
        return "\n".join(lines)
    if kind == "check-pair":
        rows = [[k, p[k]] for k in ("k_G", "k_quotient", "k_normal", "equality", "consistent",
                                    "scheme_bijection_ok", "image_containment_ok", "monotone_ok",
                                    "cause", "violation")]
        return f"{p['group']}  |N| = {p['normal_order']}  class {p['class_spec']}\n" + table(["field", "value"], rows)
    if kind == "equiv":
        rows = [[g, r["order"], r.get("iso_name")] for g, r in zip(p["groups"], p["reductions"])]
        return (f"class {p['class_spec']}  equivalent: {_cell(p['equivalent'])}\n"
                + table(["group", "reduction order", "iso type"], rows))
    if kind == "suite":
        head = (f"suite {p['suite']}: {'PASS' if p['passed'] else 'FAIL'}  "
                f"instances {p['instances']}  violations {len(p['violations'])}  "
                f"skipped {len(p['skipped'])}  {p['elapsed']:.1f}s")
        extra = [json.dumps(v, ensure_ascii=False) for v in p["violations"][:20]]
        return "\n".join([head] + extra)
    if kind == "catalog":
        return table(["name", "order", "degree"], [[e["name"], e["order"], e["degree"]] for e in p["entries"]])
    if kind == "error":
        return f"error: {p['error']}: {p['reason']}"
    raise UsageError(f"no renderer for {kind!r}")


def emit_report(kind: str, payload: dict, fmt: str = "human", path: str | None = None) -> str:
    """Write the report (validated first when JSON); returns the text written."""
    if fmt == "json":
        validate(kind, payload)
        text = json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=True)
    else:
        text = render_human(kind, payload)
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    else:
        sys.stdout.write(text + "\n")
    return text
