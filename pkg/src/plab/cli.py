"""Command-line front end: verify suites, run the candidate search, render and diff reports.

Exit codes: 0 pass, 1 assertion failure, 2 bad configuration, 3 missing or
unusable input data, 4 budget exhausted (a partial report is still written).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys

from . import report as rpt
from .constructors.pcpj import PcpjError, ingest
from .pgroup import BudgetExceeded, PresentationError, whole

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_DATA, EXIT_BUDGET = 0, 1, 2, 3, 4
FAMILIES = {"psu5": "PSU5", "3d4": "3D4", "2f4": "2F4"}
TEST_FAMILIES = ("d8", "heisenberg")
SUITE_CHOICES = ("structure", "fingerprints", "lemmas", "essentials", "all")


class ConfigError(Exception):
    pass


class DataError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _common(sp, families):
    sp.add_argument("--family", required=True, type=str.lower, choices=families)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--n", type=_positive, default=1)
    sp.add_argument("--input", help="PCP-J file to ingest instead of building the group")
    sp.add_argument("--output", help="write the JSON report here (default: stdout)")
    sp.add_argument("--seed", type=int, default=0, help="sampling seed for non-exhaustive checks")
    sp.add_argument("--samples", type=_positive, default=64, help="samples per sampled check")
    sp.add_argument("--depth", type=_positive, default=2, help="characteristic toolbox depth")
    sp.add_argument("--class-budget", type=_positive, default=None, help="cap on centric classes")
    sp.add_argument("--element-budget", type=_positive, default=None, help="cap on elements scanned per step")
    sp.add_argument("--quiet", action="store_true", help="suppress the rendered summary on stderr")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"plab {rpt.__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run assertion suites for a family")
    _common(v, sorted(FAMILIES))
    v.add_argument("--suite", default="all", choices=SUITE_CHOICES)
    s = sub.add_parser("search", help="run the essential-candidate search")
    _common(s, sorted(FAMILIES) + list(TEST_FAMILIES))
    r = sub.add_parser("report", help="render or diff saved reports")
    rs = r.add_subparsers(dest="action", required=True)
    rr = rs.add_parser("render", help="human-readable rendering of a report")
    rr.add_argument("path")
    rd = rs.add_parser("diff", help="assertion-level differences between two reports")
    rd.add_argument("a")
    rd.add_argument("b")
    return ap


def _config(args, **extra) -> dict:
    cfg = {
        "command": args.command,
        "family": args.family,
        "p": args.p,
        "n": args.n,
        "seed": args.seed,
        "samples": args.samples,
        "depth": args.depth,
        "class_budget": args.class_budget,
        "element_budget": args.element_budget,
        "input": None,
    }
    if args.input:
        cfg["input"] = {"path": os.path.basename(args.input), "sha256": _sha256(args.input)}
    cfg.update(extra)
    return cfg


def _sha256(path) -> str | None:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return None


def _check_config(args) -> None:
    if args.p < 2 or any(args.p % d == 0 for d in range(2, int(args.p**0.5) + 1)):
        raise ConfigError(f"p = {args.p} is not a prime")
    if args.family == "2f4" and args.p != 2:
        raise ConfigError("family 2f4 requires p = 2")
    if args.family == "d8" and (args.p, args.n) != (2, 1):
        raise ConfigError("family d8 is the dihedral group of order 8 (p = 2, n = 1)")
    if args.family == "heisenberg" and args.n != 1:
        raise ConfigError("family heisenberg is defined for n = 1")


def _load_group(args):
    """(presentation, ingestion report rows) for the configured family."""
    fam = args.family
    if args.input is None:
        if fam == "2f4":
            raise DataError("family 2f4 needs PCP-J data (--input); no construction is built in")
        if fam == "psu5":
            from .constructors.psu5 import build_su5_sylow

            return build_su5_sylow(args.p, args.n)[0], []
        if fam == "3d4":
            from .constructors.d4 import build_3d4_sylow

            return build_3d4_sylow(args.p, args.n)[0], []
        if fam == "d8":
            from .constructors.small import dihedral8

            return dihedral8(), []
        from .constructors.small import heisenberg

        return heisenberg(args.p), []
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        data = ingest(text, validate=False)
    except (PcpjError, PresentationError) as exc:
        raise DataError(f"{args.input}: {exc}") from None
    pres = data.pres
    got = (data.family.lower(), pres.p, int(pres.metadata.get("n", 1)))
    if got != (fam, args.p, args.n):
        raise ConfigError(f"input describes family={got[0]} p={got[1]} n={got[2]}, not {fam} p={args.p} n={args.n}")
    return pres, [list(r) for r in data.report]


def cmd_verify(args) -> tuple[dict, int]:
    from .suites import SUITES, lab_for, run_checks

    suites = SUITES if args.suite == "all" else (args.suite,)
    cfg = _config(args, suites=list(suites))
    pres, ingestion = _load_group(args)
    lab = lab_for(
        pres,
        FAMILIES[args.family],
        seed=args.seed,
        samples=args.samples,
        depth=args.depth,
        class_budget=args.class_budget,
        element_budget=args.element_budget,
    )
    assertions = [a.to_dict() for a in run_checks(lab, suites)]
    for check, expected, computed, ok in ingestion:
        assertions.append(
            {"id": f"ingest.{check}", "anchor": f"declared {check} matches the data",
             "expected": expected, "computed": computed, "pass": bool(ok), "exhaustive": True}
        )
    budget = any(a.get("budget_exceeded") for a in assertions)
    report = lab.__dict__.get("report")
    if report is not None and not report.exhaustive:
        budget = True
    failed = any(not a["pass"] and a.get("gating", True) for a in assertions)
    code = EXIT_BUDGET if budget else (EXIT_FAIL if failed else EXIT_PASS)
    status = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_BUDGET: "budget"}[code]
    doc = rpt.envelope("verify", cfg, status, code, assertions=assertions, summary=rpt.summarize(assertions))
    return doc, code


def cmd_search(args) -> tuple[dict, int]:
    from .essentials import candidate_search

    cfg = _config(args)
    pres, _ = _load_group(args)
    S = whole(pres)
    designated = None
    if args.family in FAMILIES:
        from .constructors.designated import designated_subgroups

        designated = designated_subgroups(pres, FAMILIES[args.family], check=False)
    try:
        r = candidate_search(
            S,
            designated,
            depth=args.depth,
            class_budget=args.class_budget,
            element_budget=args.element_budget,
            family=FAMILIES.get(args.family, args.family),
            strict=False,
        )
    except BudgetExceeded as exc:
        doc = rpt.envelope("search", cfg, "budget", EXIT_BUDGET, error=str(exc))
        return doc, EXIT_BUDGET
    body = r.to_dict()
    if not r.exhaustive:
        code = EXIT_BUDGET
    elif designated is not None and not (r.q1_survives and r.q2_survives):
        code = EXIT_FAIL
    else:
        code = EXIT_PASS
    status = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_BUDGET: "budget"}[code]
    return rpt.envelope("search", cfg, status, code, search=body), code


def cmd_report(args) -> int:
    try:
        if args.action == "render":
            sys.stdout.write(rpt.render(rpt.load(args.path)))
            return EXIT_PASS
        lines = rpt.diff(rpt.load(args.a), rpt.load(args.b))
    except OSError as exc:
        print(f"plab: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_DATA
    except rpt.ReportError as exc:
        print(f"plab: report does not match the schema at {exc}", file=sys.stderr)
        return EXIT_DATA
    for line in lines:
        print(line)
    return EXIT_FAIL if lines else EXIT_PASS


def _emit(doc: dict, args) -> None:
    text = rpt.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        sys.stderr.write(rpt.render(doc))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "report":
        return cmd_report(args)
    run = cmd_verify if args.command == "verify" else cmd_search
    try:
        _check_config(args)
        doc, code = run(args)
    except ConfigError as exc:
        print(f"plab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"plab: input data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    _emit(doc, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
