"""PCP-J: a line-oriented text format for prime-exponent pc presentations.

Grammar (UTF-8, one statement per line, ``#`` starts a comment line)::

    file      := header field* meta* relation* "end"
    header    := "format_version: 1" NL "family: " NAME NL "p: " INT NL "n: " INT NL "m: " INT NL
    field     := "field: " JSON                   # {"p": .., "n": .., "modulus": [c0, ..., cn]}
    meta      := "meta " KEY ": " JSON            # e.g. meta order_Z: 2
    relation  := power | commutator
    power     := "P " i " :" word                 # g_i^p = word
    commutator:= "C " j " " i " :" word           # [g_j, g_i] = word, j > i
    word      := ( " (" k "," e ")" )*            # g_k^e in increasing k, 0 < e < p

Generators are numbered from 1.  Omitted relations are trivial, and an empty
word is the identity.  ``order_Z`` and ``order_Z2`` metadata, when present, are
cross-checked against the computed orders of Z(S) and Z_2(S).  Serialization is
canonical: the same presentation always produces the same bytes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from ..gf import FieldSpec
from ..pgroup import InconsistentPresentation, PcPresentation, PresentationError, center, upper_central, whole
from ..pgroup.presentation import exps_to_word, word_to_exps

FORMAT_VERSION = 1
HEADER_KEYS = ("format_version", "family", "p", "n", "m")
_WORD = re.compile(r"\((\d+),(\d+)\)")
_REL = re.compile(r"^(P|C)((?: \d+)+) :((?: \(\d+,\d+\))*)$")


class PcpjError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class IngestedPresentation:
    pres: PcPresentation
    family: str
    fields: list = field(default_factory=list)
    report: list = field(default_factory=list)  # (check, expected, computed, ok)

    @property
    def ok(self) -> bool:
        return all(r[3] for r in self.report)


def _dump(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(", ", ": "), ensure_ascii=False)


def _word(exps) -> str:
    return "".join(f" ({i + 1},{e})" for i, e in exps_to_word(exps))


def serialize(pres: PcPresentation) -> str:
    meta = dict(pres.metadata)
    family = str(meta.pop("family", "unknown"))
    n = int(meta.pop("n", 1))
    meta.pop("p", None)
    fields = []
    if "field" in meta:
        fields.append(meta.pop("field"))
    fields.extend(meta.pop("fields", []))
    lines = [
        f"format_version: {FORMAT_VERSION}",
        f"family: {family}",
        f"p: {pres.p}",
        f"n: {n}",
        f"m: {pres.m}",
    ]
    for f in fields:
        lines.append(f"field: {_dump(f)}")
    for k in sorted(meta):
        lines.append(f"meta {k}: {_dump(meta[k])}")
    for i in range(pres.m):
        if any(pres.powers[i]):
            lines.append(f"P {i + 1} :{_word(pres.powers[i])}")
    for j, i in sorted(pres.commutators):
        lines.append(f"C {j + 1} {i + 1} :{_word(pres.commutators[(j, i)])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse(text: str) -> PcPresentation:
    """Parse PCP-J text into a presentation (without the consistency check)."""
    header = {}
    fields, meta = [], {}
    powers, comms = {}, {}
    seen_end = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if seen_end:
            raise PcpjError("content after 'end'", lineno)
        if line == "end":
            seen_end = True
            continue
        if len(header) < len(HEADER_KEYS):
            key = HEADER_KEYS[len(header)]
            if not line.startswith(key + ":"):
                raise PcpjError(f"expected header field '{key}'", lineno)
            val = line[len(key) + 1 :].strip()
            if key == "family":
                header[key] = val
            else:
                try:
                    header[key] = int(val)
                except ValueError:
                    raise PcpjError(f"header field '{key}' must be an integer", lineno) from None
            if key == "format_version" and header[key] != FORMAT_VERSION:
                raise PcpjError(f"unsupported format version {header[key]}", lineno)
            continue
        p, m = header["p"], header["m"]
        if line.startswith("field:"):
            try:
                spec = FieldSpec.from_dict(json.loads(line[6:]))
            except Exception as exc:
                raise PcpjError(f"bad field block: {exc}", lineno) from None
            fields.append(spec.to_dict())
            continue
        if line.startswith("meta "):
            key, sep, val = line[5:].partition(":")
            if not sep or not key.strip():
                raise PcpjError("metadata line must read 'meta KEY: JSON'", lineno)
            try:
                meta[key.strip()] = json.loads(val)
            except json.JSONDecodeError as exc:
                raise PcpjError(f"bad metadata value: {exc}", lineno) from None
            continue
        mt = _REL.match(line)
        if not mt:
            raise PcpjError(f"unrecognised statement {line!r}", lineno)
        kind, idx, word = mt.group(1), [int(x) - 1 for x in mt.group(2).split()], mt.group(3)
        pairs = [(int(a) - 1, int(b)) for a, b in _WORD.findall(word)]
        for k, e in pairs:
            if not 0 <= k < m:
                raise PcpjError(f"generator {k + 1} out of range 1..{m}", lineno)
            if not 0 < e < p:
                raise PcpjError(f"exponent {e} out of range 1..{p - 1}", lineno)
        try:
            exps = word_to_exps(pairs, m)
        except PresentationError as exc:
            raise PcpjError(str(exc), lineno) from None
        if kind == "P":
            if len(idx) != 1 or not 0 <= idx[0] < m:
                raise PcpjError("power relation needs one generator index in range", lineno)
            if idx[0] in powers:
                raise PcpjError(f"duplicate power relation for generator {idx[0] + 1}", lineno)
            powers[idx[0]] = exps
        else:
            if len(idx) != 2:
                raise PcpjError("commutator relation needs two generator indices", lineno)
            j, i = idx
            if not 0 <= i < j < m:
                raise PcpjError("commutator relation 'C j i' needs 1 <= i < j <= m", lineno)
            if (j, i) in comms:
                raise PcpjError(f"duplicate commutator relation ({j + 1}, {i + 1})", lineno)
            comms[(j, i)] = exps
    if len(header) < len(HEADER_KEYS):
        raise PcpjError("incomplete header")
    if not seen_end:
        raise PcpjError("missing 'end'")
    metadata = {"family": header["family"], "p": header["p"], "n": header["n"]}
    if fields:
        metadata["field"] = fields[0]
    if len(fields) > 1:
        metadata["fields"] = fields[1:]
    metadata.update(meta)
    m = header["m"]
    try:
        return PcPresentation(header["p"], m, [powers.get(i) for i in range(m)], comms, metadata)
    except PresentationError as exc:
        raise PcpjError(str(exc)) from None


def ingest(text: str, samples: int = 1000, validate: bool = True) -> IngestedPresentation:
    """Parse, consistency-check and validate a PCP-J document.

    Inconsistent relations raise InconsistentPresentation naming the failing
    test word.  Declared orders of Z(S) and Z_2(S) are compared with computed
    ones.  For family 2F4 the structure suite runs as part of the validation.
    """
    pres = parse(text)
    pres.check_consistency(samples=samples)
    family = str(pres.metadata.get("family", "unknown"))
    report = []
    S = whole(pres)
    for key, sub in (("order_Z", lambda: center(S)), ("order_Z2", lambda: upper_central(S, 2))):
        if key in pres.metadata:
            want = int(pres.metadata[key])
            got = sub().order
            report.append((key, want, got, want == got))
    fields = [pres.metadata["field"]] + list(pres.metadata.get("fields", [])) if "field" in pres.metadata else []
    out = IngestedPresentation(pres, family, fields, report)
    if validate and family.upper() == "2F4":
        from ..suites import lab_for, run_checks

        for a in run_checks(lab_for(pres, "2F4"), ("structure",)):
            report.append((a.id, a.expected, a.computed, a.passed))
    return out


def ingest_presentation(path) -> IngestedPresentation:
    with open(path, encoding="utf-8") as fh:
        return ingest(fh.read())


def write_presentation(pres: PcPresentation, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(pres))


__all__ = [
    "FORMAT_VERSION",
    "IngestedPresentation",
    "InconsistentPresentation",
    "PcpjError",
    "ingest",
    "ingest_presentation",
    "parse",
    "serialize",
    "write_presentation",
]
