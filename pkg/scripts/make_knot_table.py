"""Regenerate src/knotinv/data/knots.jsonl.

Minimal PD codes follow the Knot Atlas listing.  3_1 and 6_1 are stored as
mirror images so that their HOMFLY polynomials come out as
-a^-4 + 2a^-2 + a^-2 z^2 and a^-4 - a^-2 + a^2 - z^2 (a^-2 + 1).  Knots whose
minimal PD is not listed here are taken from braid closures.
"""

from __future__ import annotations

import json
from pathlib import Path

from knotinv.knotcore import from_braid, mirror, parse_pd

PD = {
    "3_1": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "4_1": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "5_1": "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
    "5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "6_1": "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
    "6_2": "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]",
    "6_3": "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]",
    "7_1": "X[1,8,2,9] X[3,10,4,11] X[5,12,6,13] X[7,14,8,1] X[9,2,10,3] X[11,4,12,5] X[13,6,14,7]",
    "7_2": "X[1,4,2,5] X[3,10,4,11] X[5,14,6,1] X[7,12,8,13] X[11,8,12,9] X[13,6,14,7] X[9,2,10,3]",
    "7_3": "X[6,2,7,1] X[10,4,11,3] X[14,8,1,7] X[8,14,9,13] X[12,6,13,5] X[2,10,3,9] X[4,12,5,11]",
    "7_6": "X[1,4,2,5] X[3,8,4,9] X[5,12,6,13] X[9,1,10,14] X[13,11,14,10] X[11,6,12,7] X[7,2,8,3]",
}
MIRRORED = {"3_1", "6_1"}
BRAIDS = {
    "7_4": [1, 1, 2, -1, 2, 2, 3, -2, 3],
    "7_5": [1, 1, 1, 1, 2, -1, 2, 2],
    "7_7": [1, -2, 1, -2, 3, -2, 3],
}
ORDER = ["0_1", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3",
         "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7"]


def entries():
    for name in ORDER:
        if name == "0_1":
            yield {"name": name, "pd": [], "unknots": 1}
            continue
        if name in PD:
            D = parse_pd(PD[name])
            if name in MIRRORED:
                D = mirror(D)
        else:
            D = from_braid(BRAIDS[name])
        yield {"name": name, "pd": [list(q) for q in D.crossings], "unknots": 0}


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "src" / "knotinv" / "data" / "knots.jsonl"
    with out.open("w") as fh:
        for entry in entries():
            fh.write(json.dumps(entry, separators=(",", ":")) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
