#!/usr/bin/env python3
"""Survey the powers-of-5 congruence data for primes 7 <= ell < bound.

For each prime ell, prints the eta^19 and eta^23 eigenvalues mod 5, the
shared value (15/ell)(1+ell) mod 5, and the verified period K_ell.

Usage: python scripts/power_of_5_survey.py [--bound 200]
"""

import argparse

from sympy import primerange

from partcert.arith import kronecker
from partcert.hecke import eigenvalue
from partcert.modforms import SpaceParams, eta_power
from partcert.pipeline import k5
from partcert.qseries import SlotSeries, slot_delta


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=200)
    args = ap.parse_args()
    print("ell  a(eta^19)  a(eta^23)  (15/ell)(1+ell)  K_ell")
    for ell in primerange(7, args.bound):
        prec = slot_delta(23, ell) + 2
        a = eigenvalue(SlotSeries(19, eta_power(19, prec, 5)),
                       SpaceParams(r=19, s=0), ell)
        b = eigenvalue(SlotSeries(23, eta_power(23, prec, 5)),
                       SpaceParams(r=23, s=0), ell)
        c = kronecker(15, ell) * (1 + ell) % 5
        print(f"{ell:>3}  {a % 5:>9}  {b % 5:>9}  {c:>15}  {k5(ell):>5}")


if __name__ == "__main__":
    main()
