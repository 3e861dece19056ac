#!/usr/bin/env python3
"""Issue example congruence certificates and append them to a catalog.

Usage: python scripts/certify_examples.py [--catalog PATH] [--with-169]

The default examples run in about a minute; --with-169 adds the modulus-169
certificate (13^2, ell=5, 13-dimensional space, K = 28392), which takes a
couple of minutes more.
"""

import argparse

from partcert.pipeline import catalog_append, certify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--catalog", default="certificates.jsonl")
    ap.add_argument("--with-169", action="store_true")
    args = ap.parse_args()

    jobs = [
        (13, 1, 5, {}),
        (13, 1, 59, {"spot_count": 1}),
        (37, 1, 5, {}),
        (5, 1, 19, {"spot_budget": 10 ** 6}),
    ]
    if args.with_169:
        jobs.append((13, 2, 5, {"mode": "paper-monomial"}))

    for m, i, ell, opts in jobs:
        cert = certify(m, i, ell, **opts)
        fresh = catalog_append(args.catalog, cert)
        ran = [s for s in cert.spot_checks if s["residue"] is not None]
        print(f"m={m} i={i} ell={ell}: K={cert.K} M_period={cert.M_period} "
              f"exponent={cert.exponent} spot-checks "
              f"{len(ran)}/{len(cert.spot_checks)} ran, "
              f"{'appended' if fresh else 'already cataloged'}")
        print(f"  {cert.congruence['statement']}")


if __name__ == "__main__":
    main()
