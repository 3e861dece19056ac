#!/usr/bin/env python3
"""Reproduce the m=13 and m=37 eigenvalue / order tables.

Usage: python scripts/reproduce_tables.py [--csv]
"""

import argparse
import sys

from partcert.pipeline import tables

M13_ELLS = [5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 73]
M37_ELLS = [5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 47, 53, 59, 61]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args()
    for m, ells in ((13, M13_ELLS), (37, M37_ELLS)):
        art = tables(m, ells)
        print(f"# m = {m}: eigenvalues, ell^e mod {m}, eigen-split order k,")
        print("# full block-matrix PGL order K and GL order M_period")
        sys.stdout.write(art.to_csv() if args.csv else art.to_text())
        print()


if __name__ == "__main__":
    main()
