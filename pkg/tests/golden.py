"""Brute-force golden reports for the candidate search on the small oracle groups.

Run ``python tests/golden.py`` to regenerate tests/data/golden/*.json.  Classes
are named by the least pc igs among their conjugates so they can be compared
with the pipeline directly.
"""

from __future__ import annotations

import json
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from oracle import oracle_suite  # noqa: E402

from plab.pgroup import close  # noqa: E402

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "data", "golden")
GOLDEN_GROUPS = ("dihedral8", "heisenberg3", "heisenberg7")


def brute_golden(pres, G, phi) -> dict:
    inv = {v: k for k, v in phi.items()}
    S = G.G
    rows = []
    for cls in G.centric_classes(S):
        igs = min(close(pres, [inv[i] for i in sorted(H)]).igs for H in cls)
        H = next(iter(cls))
        excluded = H == S
        burnside = not excluded and not G.burnside_survives(S, H)
        chain = not excluded and not G.chain_survives(S, H)
        rows.append(
            {
                "igs": [list(x) for x in igs],
                "order": len(H),
                "excluded": excluded,
                "burnside": burnside,
                "chain": chain,
                "survivor": not (excluded or burnside or chain),
            }
        )
    rows.sort(key=lambda r: (r["order"], r["igs"]))
    return {"classes": rows, "survivors": sum(r["survivor"] for r in rows)}


def pipeline_golden(report) -> dict:
    rows = []
    for c in report.excluded:
        rows.append((c.rep, True, set()))
    for c in report.survivors:
        rows.append((c.rep, False, set()))
    for e in report.eliminations:
        rows.append((e.rep, False, {v.criterion for v in e.evidence}))
    out = []
    for rep, excluded, crit in rows:
        out.append(
            {
                "igs": [list(x) for x in rep.igs],
                "order": rep.order,
                "excluded": excluded,
                "burnside": "burnside" in crit,
                "chain": "chain" in crit,
                "survivor": not excluded and not crit,
            }
        )
    out.sort(key=lambda r: (r["order"], r["igs"]))
    return {"classes": out, "survivors": sum(r["survivor"] for r in out)}


def golden_path(name: str) -> str:
    return os.path.join(GOLDEN_DIR, f"{name}.json")


def main() -> None:
    os.makedirs(GOLDEN_DIR, exist_ok=True)
    for name, pres, G, phi in oracle_suite():
        if name in GOLDEN_GROUPS:
            with open(golden_path(name), "w", encoding="utf-8") as fh:
                json.dump(brute_golden(pres, G, phi), fh, sort_keys=True, indent=1)
                fh.write("\n")


if __name__ == "__main__":
    main()
