"""Versioned JSON reports: construction, schema validation, rendering and diffing.

Reports are serialized with sorted keys and a fixed indent so identical runs give
identical bytes.  They carry no timing information for the same reason.
"""

from __future__ import annotations

import json

import jsonschema

from . import __version__

SCHEMA_VERSION = 1
TOOL = "plab"

_ASSERTION = {
    "type": "object",
    "required": ["id", "anchor", "expected", "computed", "pass", "exhaustive"],
    "properties": {
        "id": {"type": "string"},
        "anchor": {"type": "string"},
        "pass": {"type": "boolean"},
        "exhaustive": {"type": "boolean"},
        "gating": {"type": "boolean"},
        "budget_exceeded": {"type": "boolean"},
    },
}

_CLASS = {
    "type": "object",
    "required": ["class", "order", "igs"],
    "properties": {"class": {"type": "string"}, "order": {"type": "integer"}, "igs": {"type": "array"}},
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "tool", "kind", "config", "status", "exit_code"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {
            "type": "object",
            "required": ["name", "version"],
            "properties": {"name": {"const": TOOL}, "version": {"type": "string"}},
        },
        "kind": {"enum": ["verify", "search"]},
        "config": {"type": "object", "required": ["family", "p", "n"]},
        "status": {"enum": ["pass", "fail", "budget", "error"]},
        "exit_code": {"enum": [0, 1, 2, 3, 4]},
        "assertions": {"type": "array", "items": _ASSERTION},
        "summary": {"type": "object"},
        "search": {
            "type": "object",
            "required": ["centric_class_count", "survivors", "eliminations", "exhaustive", "surplus_survivors"],
            "properties": {
                "survivors": {"type": "array", "items": _CLASS},
                "eliminations": {"type": "array", "items": _CLASS},
                "exhaustive": {"type": "boolean"},
            },
        },
        "error": {"type": "string"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "verify"}}}, "then": {"required": ["assertions", "summary"]}},
        {"if": {"properties": {"kind": {"const": "search"}}},
         "then": {"anyOf": [{"required": ["search"]}, {"required": ["error"]}]}},
    ],
}


class ReportError(ValueError):
    """A document that does not match the report schema; ``pointer`` locates the problem."""

    def __init__(self, message: str, pointer: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


def _jsonable(value):
    """Coerce values into plain JSON types with deterministic key order."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def envelope(kind: str, config: dict, status: str, exit_code: int, **body) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL, "version": __version__},
        "kind": kind,
        "config": config,
        "status": status,
        "exit_code": exit_code,
    }
    doc.update(body)
    return _jsonable(doc)


def summarize(assertions: list) -> dict:
    gating = [a for a in assertions if a.get("gating", True)]
    return {
        "total": len(assertions),
        "passed": sum(1 for a in assertions if a["pass"]),
        "failed": sum(1 for a in gating if not a["pass"]),
        "non_gating_failed": sum(1 for a in assertions if not a.get("gating", True) and not a["pass"]),
        "budget_exceeded": sum(1 for a in assertions if a.get("budget_exceeded")),
        "all_exhaustive": all(a["exhaustive"] for a in assertions),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def validate(doc) -> dict:
    """Raise ReportError (with a JSON pointer) unless ``doc`` matches the schema."""
    v = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        pointer = "/" + "/".join(str(x) for x in e.absolute_path)
        raise ReportError(e.message, pointer)
    return doc


def load(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ReportError(f"not JSON: {exc.msg} at line {exc.lineno}", "/") from None
    return validate(doc)


def _short(value, width: int = 70) -> str:
    s = json.dumps(value, sort_keys=True)
    return s if len(s) <= width else s[: width - 3] + "..."


def render(doc: dict) -> str:
    """Stable human-readable rendering, one line per assertion or class."""
    cfg = doc["config"]
    lines = [
        f"{doc['tool']['name']} {doc['tool']['version']} {doc['kind']} "
        f"family={cfg['family']} p={cfg['p']} n={cfg['n']} status={doc['status']} exit={doc['exit_code']}"
    ]
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    for a in doc.get("assertions", []):
        mark = "PASS" if a["pass"] else ("info" if not a.get("gating", True) else "FAIL")
        flag = "" if a["exhaustive"] else " (sampled)"
        lines.append(f"[{mark}] {a['id']}{flag}: {a['anchor']}")
        if not a["pass"]:
            lines.append(f"       expected {_short(a['expected'])}")
            lines.append(f"       computed {_short(a['computed'])}")
    if "summary" in doc:
        s = doc["summary"]
        lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} gating failures")
    if "search" in doc:
        r = doc["search"]
        lines.append(
            f"centric classes {r['centric_class_count']}, survivors {len(r['survivors'])}, "
            f"eliminated {len(r['eliminations'])}, surplus {r['surplus_survivors']}, exhaustive {r['exhaustive']}"
        )
        for c in r["survivors"]:
            tags = [t for t in ("Q1", "Q2") if c.get(f"is_{t}")] + (["maximal"] if c.get("maximal") else [])
            lines.append(f"  survivor {c['class']} order {c['order']} {' '.join(tags)}".rstrip())
        for e in r["eliminations"]:
            crit = ",".join(v["criterion"] for v in e["evidence"])
            lines.append(f"  eliminated {e['class']} order {e['order']} by {crit}")
    return "\n".join(lines) + "\n"


def _index(doc: dict) -> dict:
    """Comparable units of a report: assertions by id and search classes by id."""
    out = {}
    for a in doc.get("assertions", []):
        out[f"assertion {a['id']}"] = {k: a[k] for k in ("expected", "computed", "pass", "exhaustive")}
    r = doc.get("search")
    if r is not None:
        for c in r["survivors"]:
            out[f"survivor {c['class']}"] = c
        for e in r["eliminations"]:
            out[f"elimination {e['class']}"] = e
        for k in ("centric_class_count", "exhaustive", "surplus_survivors", "q1_survives", "q2_survives"):
            if k in r:
                out[f"search {k}"] = r[k]
    return out


def diff(a: dict, b: dict) -> list:
    """Assertion- and class-level differences; empty for equivalent reports."""
    ia, ib = _index(a), _index(b)
    lines = []
    for key in sorted(set(ia) | set(ib)):
        if key not in ib:
            lines.append(f"- {key}")
        elif key not in ia:
            lines.append(f"+ {key}")
        elif ia[key] != ib[key]:
            lines.append(f"~ {key}: {_short(ia[key], 60)} -> {_short(ib[key], 60)}")
    return lines
