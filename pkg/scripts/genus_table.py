#!/usr/bin/env python3
"""Print minimal-genus verdicts for a panel of classes on sample surfaces.

Shows how the decision rules split the classes: exact answers with
their rule tags, and the open cases with bare adjunction bounds.
"""

import argparse
import sys

import genlat as g


PANEL = [
    ("E(2)", ["e1=1", "e1=1,f1=2", "e1=2,f1=2", "e1=1,f1=-1", "k=1,W=1,e1=1,f1=1", "e1=1,f1=-3"]),
    ("E(3)", ["k=1", "e1=1,f1=1", "k=4,e1=2,f1=2", "e1=-1,f1=1", "k=2,x1_1=1", "W=1"]),
    ("E(2;2,3)", ["e1=1,f1=3", "k=1,x1_1=1", "k=2,e1=1", "W=1", "e1=2,f1=2"]),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for spec, classes in PANEL:
        surface = g.parse_surface(spec)
        for text in classes:
            a = surface.parse_class(text)
            v = g.min_genus(surface, a)
            rows.append(
                {
                    "surface": spec,
                    "class": text,
                    "square": a.square(),
                    "status": v.status.value,
                    "genus": v.realized,
                    "lower_bound": v.lower_bound,
                    "rule": v.rule.value,
                }
            )
    if args.json:
        import json

        print(json.dumps(rows, indent=2, sort_keys=True))
        return 0
    header = (
        f"{'surface':10} {'class':22} {'square':>6} {'status':>16} "
        f"{'genus':>5} {'bound':>5}  rule"
    )
    print(header)
    print("-" * len(header))
    for r in rows:
        genus = "-" if r["genus"] is None else r["genus"]
        print(
            f"{r['surface']:10} {r['class']:22} {r['square']:>6} {r['status']:>16} "
            f"{genus:>5} {r['lower_bound']:>5}  {r['rule']}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
