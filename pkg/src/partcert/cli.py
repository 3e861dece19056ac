"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 budget/cap infeasible,
3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    CapExceeded,
    InadmissibleN,
    MatchFailure,
    MismatchWithTheorem,
    NotApplicable,
    OverflowBudget,
    PartcertError,
    SpanViolation,
)
from .hecke import matrix_of_t, required_precision
from .modforms import SpaceParams, dim_Ms, srs_basis
from .partition import DEFAULT_BUDGET, spot_check_congruence
from .pipeline import (
    DEFAULT_ORDER_CAP,
    catalog_append,
    catalog_query,
    certify,
    period_m,
    sporadic_check,
    tables,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

_BASIS_MODES = {"echelon": "echelon", "paper": "paper-monomial"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _space_params(args) -> SpaceParams:
    if args.m is not None:
        if args.modulus_power == 1:
            return SpaceParams.for_prime(args.m)
        from .pipeline import ab_weight
        ab = ab_weight(args.m, args.modulus_power)
        return SpaceParams(r=ab.eta_exponent, s=ab.weight,
                           m=args.m, i=args.modulus_power)
    if args.r is None or args.s is None:
        raise SystemExit(EXIT_USAGE)
    return SpaceParams(r=args.r, s=args.s)


def _emit(args, payload, csv_text=None, pretty_text=None):
    if args.output == "json":
        print(json.dumps(payload) if not isinstance(payload, str) else payload)
    elif args.output == "csv":
        print(csv_text if csv_text is not None
              else _default_csv(payload), end="")
    else:
        print(pretty_text if pretty_text is not None
              else json.dumps(payload, indent=2))


def _default_csv(payload):
    if isinstance(payload, dict):
        keys = list(payload)
        return (",".join(keys) + "\n" +
                ",".join(str(payload[k]) for k in keys) + "\n")
    return str(payload) + "\n"


def cmd_basis(args):
    params = _space_params(args)
    t = dim_Ms(params.s)
    prec = args.precision_slots or max(4 * t, 30)
    modulus = (args.m ** args.modulus_power) if args.m else None
    basis = srs_basis(params, prec, mode=_BASIS_MODES[args.basis_mode],
                      modulus=modulus)
    payload = basis.descriptor_dict()
    payload["leading_slots"] = [
        [str(f.coef(n)) for n in range(min(basis.prec, 2 * t + 2))]
        for f in basis.forms
    ]
    _emit(args, payload)
    return EXIT_OK


def cmd_hecke(args):
    params = _space_params(args)
    t = dim_Ms(params.s)
    modulus = (args.m ** args.modulus_power) if args.m else None
    residual = args.residual_depth
    prec = args.precision_slots or required_precision(
        params, args.ell, t, residual)
    basis = srs_basis(params, prec, mode=_BASIS_MODES[args.basis_mode],
                      modulus=modulus)
    A = matrix_of_t(basis, args.ell, residual_depth=residual)
    payload = {"r": params.r, "s": params.s, "ell": args.ell, "e": A.e,
               "modulus": modulus,
               "matrix": [[str(x) for x in row] for row in A.mat]}
    csv_text = "\n".join(",".join(str(x) for x in row) for row in A.mat) + "\n"
    _emit(args, payload, csv_text=csv_text)
    return EXIT_OK


def cmd_certify(args):
    cert = certify(args.m, args.modulus_power, args.ell,
                   mode=_BASIS_MODES[args.basis_mode],
                   order_cap=args.order_cap,
                   spot_budget=args.partition_budget,
                   spot_count=args.spot_count,
                   n_list=args.n or None)
    if args.catalog:
        catalog_append(args.catalog, cert)
    _emit(args, json.loads(cert.to_json()))
    if any(s["status"] == "fail" for s in cert.spot_checks):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_tables(args):
    ells = args.ell_list or (
        [5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 73]
        if args.m == 13 else
        [5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 47, 53, 59, 61])
    art = tables(args.m, ells, order_cap=args.order_cap)
    payload = {"m": art.m, "a_labels": list(art.a_labels),
               "rows": [{**row, "a": [str(a) for a in row["a"]]}
                        for row in art.rows]}
    _emit(args, payload, csv_text=art.to_csv(), pretty_text=art.to_text())
    return EXIT_OK


def cmd_verify(args):
    if args.sporadic:
        result = sporadic_check(args.ell, args.modulus_power, args.sporadic,
                                budget=args.partition_budget)
        _emit(args, result)
        return EXIT_OK if result["ok"] else EXIT_VERIFY
    spots = spot_check_congruence(args.m, args.modulus_power, args.ell,
                                  args.exponent, n_list=args.n or None,
                                  count=args.spot_count,
                                  budget=args.partition_budget)
    _emit(args, spots)
    if any(s["status"] == "fail" for s in spots):
        return EXIT_VERIFY
    if all(s["status"] == "infeasible" for s in spots):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_period(args):
    realized, bound_exp = period_m(args.m, order_cap=args.order_cap)
    payload = {"m": args.m, "realized_order": realized,
               "bound_exponent": bound_exp,
               "bound": str(args.m ** bound_exp)}
    _emit(args, payload)
    return EXIT_OK


def cmd_catalog(args):
    certs = catalog_query(args.path, m=args.m, i=args.modulus_power
                          if args.modulus_power != 1 or args.i_given else None,
                          ell=args.ell)
    if args.output == "json":
        for c in certs:
            print(json.dumps(c, separators=(",", ":")))
    else:
        for c in certs:
            print(f"m={c['m']} i={c['i']} ell={c['ell']} K={c['K']} "
                  f"M_period={c['M_period']} hash={c['provenance']['basis_hash'][:12]}")
    return EXIT_OK


def _add_global_flags(p, suppress=False):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--modulus-power", type=int, default=d(1),
                   dest="modulus_power",
                   help="the power i in the modulus m^i")
    p.add_argument("--precision-slots", type=int, default=d(None),
                   dest="precision_slots")
    p.add_argument("--order-cap", type=int, default=d(DEFAULT_ORDER_CAP),
                   dest="order_cap")
    p.add_argument("--partition-budget", type=int, default=d(DEFAULT_BUDGET),
                   dest="partition_budget")
    p.add_argument("--basis-mode", choices=sorted(_BASIS_MODES),
                   default=d("echelon"), dest="basis_mode")
    p.add_argument("--output", choices=["json", "csv", "text"],
                   default=d("json"))


def build_parser():
    p = _Parser(prog="partcert",
                description="Explicit partition congruence certificates.")
    _add_global_flags(p)
    sub = p.add_subparsers(dest="command", required=True,
                           parser_class=_Parser)

    sp = sub.add_parser("basis", help="print an invariant-subspace basis")
    sp.add_argument("--m", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("hecke", help="Hecke matrix of T_{ell^2}")
    sp.add_argument("ell", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--residual-depth", type=int, default=5,
                    dest="residual_depth")
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_hecke)

    sp = sub.add_parser("certify", help="issue a congruence certificate")
    sp.add_argument("m", type=int)
    sp.add_argument("ell", type=int)
    sp.add_argument("--spot-count", type=int, default=3, dest="spot_count")
    sp.add_argument("--n", type=int, action="append",
                    help="explicit admissible n for spot checks (repeatable)")
    sp.add_argument("--catalog", help="append the certificate to this catalog")
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("tables", help="eigenvalue / order tables")
    sp.add_argument("m", type=int)
    sp.add_argument("ell_list", type=int, nargs="*")
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("verify", help="partition-oracle spot checks")
    sp.add_argument("m", type=int)
    sp.add_argument("ell", type=int)
    sp.add_argument("exponent", type=int, nargs="?", default=3)
    sp.add_argument("--n", type=int, action="append")
    sp.add_argument("--spot-count", type=int, default=3, dest="spot_count")
    sp.add_argument("--sporadic", type=int, metavar="N",
                    help="run the fixed-n sporadic mod-5 check at this n")
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("period", help="realized period of T_{m^2} mod m")
    sp.add_argument("m", type=int)
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("catalog", help="query a certificate catalog")
    sp.add_argument("path")
    sp.add_argument("--m", type=int)
    sp.add_argument("--ell", type=int)
    _add_global_flags(sp, suppress=True)
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    args.i_given = any(a.startswith("--modulus-power") for a in argv)
    try:
        return args.func(args)
    except (OverflowBudget, CapExceeded) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SpanViolation, MatchFailure, MismatchWithTheorem) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (NotApplicable, InadmissibleN, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PartcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
