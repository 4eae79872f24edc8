#!/usr/bin/env python3
"""Exhaustive stage-3 census: invariants for every |a|, |b|, |c| <= radius.

Columns: twisting degrees, holomorphic twist/cotwist, the Pontrjagin
multiple, triviality type, reductivity, Fano and Kahler-Einstein status,
and the diffeomorphism key.

    python scripts/stage3_census.py --radius 2 > census.csv
"""

import argparse
import sys

from bott import cohomology as coh
from bott import fan as bfan
from bott import topology3 as t3
from bott.core import BottMatrix, cotwist, twist


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radius", type=int, default=2)
    args = parser.parse_args()

    out = sys.stdout
    out.write("a,b,c,twist,cotwist,toptwist,p1,q_type,reductive,fano,ke,diffeo_key\n")
    rng = range(-args.radius, args.radius + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                A = BottMatrix.stage3(a, b, c)
                inv = t3.stage3_invariants(a, b, c)
                key = "|".join(str(part) for part in inv.diffeo_key())
                out.write(",".join(map(str, [
                    a, b, c, twist(A), cotwist(A), coh.topological_twist(A),
                    inv.p, inv.q_trivial_type or "-",
                    bfan.is_reductive(A), bfan.is_fano(A),
                    bfan.kahler_einstein_stage34(A), key,
                ])) + "\n")


if __name__ == "__main__":
    main()
