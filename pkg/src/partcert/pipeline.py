"""Certificate assembly, golden tables, and the certificate catalog.

A congruence certificate records everything needed to re-derive
    p((m^j * ell^(2uK-1) * n + 1)/24) == 0  (mod m^i)
from the Hecke side: the space, the basis descriptor, the Hecke matrix, the
block-matrix orders, and whatever direct partition-oracle spot checks were
feasible at desk scale.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from math import lcm

from .arith import inverse_mod, kronecker, _is_prime
from .errors import (
    CapExceeded,
    InadmissibleN,
    MismatchWithTheorem,
    NotApplicable,
    NotAUnit,
    OverflowBudget,
)
from .hecke import (
    HeckeMatrix,
    block_companion,
    block_x,
    eigen_split,
    eigenvalue,
    mat_eye,
    mat_mul,
    matrix_of_t,
    order_in_gl,
    order_in_pgl,
    required_precision,
)
from .modforms import (
    SpaceParams,
    SlotSeries,
    dim_Ms,
    eta_power,
    eta_quotient_form,
    eta_exponent_for_prime,
    srs_basis,
    sturm_slots,
)
from .partition import (
    DEFAULT_BUDGET,
    check_admissible,
    partition_mod,
    spot_check_congruence,
)
from .qseries import Series, slot_delta

SCHEMA_VERSION = 1
TOOL_VERSION = "partcert-0.1.0"
DEFAULT_ORDER_CAP = 10 ** 7


@dataclass(frozen=True)
class AbWeight:
    """Weight data for representing the generating function mod m^i."""

    m: int
    i: int
    beta: int
    weight: int
    eta_exponent: int


def ab_weight(m: int, i: int) -> AbWeight:
    """beta with 24*beta == 1 (mod m^i), the eta exponent (24*beta-1)/m^i,
    and the integral weight of the accompanying level-one form."""
    if m < 13 or not _is_prime(m):
        raise ValueError(f"m must be a prime >= 13, got {m}")
    if i < 1:
        raise ValueError("i must be >= 1")
    mi = m ** i
    beta = inverse_mod(24, mi)
    eta_exp = (24 * beta - 1) // mi
    if i % 2 == 1:
        weight = (m ** (i - 1) + 1) * (m - 1) // 2 - 12 * (m // 24) - 12
    else:
        weight = m ** (i - 1) * (m - 1) - 12
    return AbWeight(m=m, i=i, beta=beta, weight=weight, eta_exponent=eta_exp)


def _stringify(obj):
    """Deterministic JSON payload: every int rendered as a decimal string."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("floats have no place in a certificate")
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    raise TypeError(f"unserializable {type(obj)}")


def basis_hash(space: dict) -> str:
    payload = json.dumps(_stringify(space), sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class CongruenceCertificate:
    m: int
    i: int
    ell: int
    space: dict
    matrix: tuple
    e: int
    K: int
    k_lcm: int | None
    M_period: int
    exponent: int
    congruence: dict
    spot_checks: tuple
    provenance: dict

    def key(self):
        return (self.m, self.i, self.ell, self.provenance["basis_hash"])

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "m": self.m,
            "i": self.i,
            "ell": self.ell,
            "space": self.space,
            "matrix": [list(row) for row in self.matrix],
            "e": self.e,
            "K": self.K,
            "k_lcm": self.k_lcm,
            "M_period": self.M_period,
            "exponent": self.exponent,
            "congruence": self.congruence,
            "spot_checks": [dict(s) for s in self.spot_checks],
            "provenance": self.provenance,
        }

    def to_json(self):
        return json.dumps(_stringify(self.to_dict()), separators=(",", ":"))


def _render_congruence(m, i, ell, K):
    statement = (f"p(({m}^j * {ell}^(2*u*{K} - 1) * n + 1) / 24) == 0 "
                 f"(mod {m}^{i})")
    admissibility = {
        "argument_integral": f"{m}^j * {ell}^(2*u*{K}-1) * n == -1 (mod 24)",
        "n_not_divisible_by": [ell, m],
        "j_range": f"j >= {i}",
        "u_range": "u >= 1",
    }
    return {"modulus": m ** i, "statement": statement,
            "admissibility": admissibility}


def certify(m: int, i: int, ell: int, mode: str = "echelon",
            order_cap: int = DEFAULT_ORDER_CAP,
            spot_budget: int = DEFAULT_BUDGET,
            spot_count: int = 3,
            n_list=None,
            residual_depth: int | None = None) -> CongruenceCertificate:
    """Full certification pipeline for p(...) == 0 mod m^i at the prime ell."""
    if not _is_prime(m) or m < 5:
        raise ValueError(f"m must be a prime >= 5, got {m}")
    if m in (7, 11):
        raise ValueError(
            "m in {7, 11} has no cusp forms of the relevant weight "
            "(Ramanujan's classical cases); nothing to certify")
    if not _is_prime(ell) or ell in (2, 3, m):
        raise ValueError(f"ell must be a prime different from 2, 3, {m}")
    if m == 5:
        return _certify_power_of_5(i, ell, order_cap, spot_budget, spot_count)

    M = m ** i
    ab = ab_weight(m, i)
    params = SpaceParams(r=ab.eta_exponent, s=ab.weight, m=m, i=i)
    t = dim_Ms(params.s)
    if residual_depth is None:
        residual_depth = max(sturm_slots(params) - t, 1)
    prec = required_precision(params, ell, t, residual_depth)
    basis = srs_basis(params, prec, mode=mode, modulus=M)
    A = matrix_of_t(basis, ell, residual_depth=residual_depth)
    X = block_x(A)
    K = order_in_pgl(X, cap=order_cap)
    M_period = order_in_gl(X, cap=order_cap)
    k_lcm = eigen_split(A, cap=order_cap).lcm if i == 1 else None
    exponent = 2 * K - 1
    spots = spot_check_congruence(m, i, ell, exponent, n_list=n_list,
                                  count=spot_count, budget=spot_budget)
    space = basis.descriptor_dict()
    return CongruenceCertificate(
        m=m, i=i, ell=ell, space=space, matrix=A.mat, e=A.e, K=K,
        k_lcm=k_lcm, M_period=M_period, exponent=exponent,
        congruence=_render_congruence(m, i, ell, K),
        spot_checks=tuple(spots),
        provenance={
            "basis_hash": basis_hash(space),
            "precision_slots": prec,
            "residual_depth": residual_depth,
            "tool": TOOL_VERSION,
        })


# ---------------------------------------------------------------------------
# The m = 5 route (powers of 5).

def _eta_power_form(r: int, prec: int, modulus) -> SlotSeries:
    return SlotSeries(r, eta_power(r, prec, modulus))


def k5(ell: int, order_cap: int = DEFAULT_ORDER_CAP) -> int:
    """K_ell for powers of 5: 5, 4, 4, 2 according to ell mod 5 = 1, 2, 3, 4.

    Verified at runtime against the PGL(2, F_5) order of the companion matrix
    built from the eigenvalue of eta(24t)^19 mod 5.
    """
    if ell < 7 or not _is_prime(ell):
        raise ValueError(f"ell must be a prime >= 7, got {ell}")
    case = {1: 5, 2: 4, 3: 4, 4: 2}[ell % 5]
    params = SpaceParams(r=19, s=0)
    prec = slot_delta(19, ell) + 1
    f = _eta_power_form(19, prec, 5)
    a = eigenvalue(f, params, ell)
    X = block_companion(((a,),), ell, params.r + 2 * params.s - 2, 5)
    computed = order_in_pgl(X, cap=order_cap)
    if computed != case:
        raise MismatchWithTheorem(
            f"ell={ell}: computed PGL(2,F_5) order {computed} != case value {case}")
    return case


def _certify_power_of_5(i, ell, order_cap, spot_budget, spot_count):
    """Certificate mod 5^(i+1) via F_{5,j} == 3^(j-1) 5^j eta^(19 or 23)."""
    K = k5(ell, order_cap)
    r = 19 if i % 2 == 1 else 23
    params = SpaceParams(r=r, s=0)
    prec = slot_delta(r, ell) + 1
    f = _eta_power_form(r, prec, 5)
    a = eigenvalue(f, params, ell)
    e = params.r + 2 * params.s - 2
    X = block_companion(((a,),), ell, e, 5)
    K_full = order_in_pgl(X, cap=order_cap)
    M_period = order_in_gl(X, cap=order_cap)
    exponent = 2 * K - 1
    modulus = 5 ** (i + 1)
    spots = spot_check_congruence(5, i, ell, exponent, count=spot_count,
                                  budget=spot_budget)
    # Re-mark against the stronger modulus 5^(i+1).
    top = max((s["argument"] for s in spots if s["residue"] is not None),
              default=0)
    table = partition_mod(top, modulus) if top else None
    checked = []
    for s in spots:
        s = dict(s)
        if s["residue"] is not None:
            res = table.p(s["argument"])
            s["residue"] = res
            s["status"] = "pass" if res % modulus == 0 else "fail"
        checked.append(s)
    space = {"r": r, "s": 0, "t": 1, "mode": "eta-power",
             "descriptors": [[0, 0, 0]]}
    statement = (f"p((5^j * {ell}^(2*u*{K} - 1) * n + 1) / 24) == 0 "
                 f"(mod 5^(j+1)), j >= {i}")
    return CongruenceCertificate(
        m=5, i=i, ell=ell, space=space, matrix=((a,),), e=e, K=K,
        k_lcm=K_full, M_period=M_period, exponent=exponent,
        congruence={"modulus": modulus, "statement": statement,
                    "admissibility": {
                        "argument_integral":
                            f"5^j * {ell}^(2*u*{K}-1) * n == -1 (mod 24)",
                        "n_not_divisible_by": [ell],
                        "j_range": f"j >= {i}",
                        "u_range": "u >= 1",
                    }},
        spot_checks=tuple(checked),
        provenance={"basis_hash": basis_hash(space),
                    "precision_slots": prec,
                    "residual_depth": 0,
                    "tool": TOOL_VERSION})


def sporadic_check(ell: int, i: int, n: int,
                   budget: int = DEFAULT_BUDGET) -> dict:
    """Sporadic mod-5^(i+1) congruences at a fixed admissible n.

    Case 1: ell == 1 (5), (-n/ell) = -1, (k, m) = (2, 5).
    Case 2: ell == 2 (5), (-n/ell) = (-1)^(i-1), (k, m) = (2, 4).
    Case 3: ell == 3 (5), (-n/ell) = (-1)^(i-1), (k, m) = (1, 4).
    Checks p((5^i ell^(2k) n + 1)/24) == 0 mod 5^(i+1) at u = 0.
    """
    if ell < 7 or not _is_prime(ell):
        raise ValueError(f"ell must be a prime >= 7, got {ell}")
    if (pow(5, i, 24) * n + 1) % 24 != 0:
        raise InadmissibleN(f"5^{i} * {n} != -1 (mod 24)")
    sym = kronecker(-n % ell, ell)
    sign_i = -1 if i % 2 == 0 else 1
    lm = ell % 5
    if lm == 1 and sym == -1:
        case, k_ell, m_ell = 1, 2, 5
    elif lm == 2 and sym == sign_i:
        case, k_ell, m_ell = 2, 2, 4
    elif lm == 3 and sym == sign_i:
        case, k_ell, m_ell = 3, 1, 4
    else:
        raise NotApplicable(
            f"(ell mod 5, (-n/ell), i) = ({lm}, {sym}, {i}) matches no case")
    exponent = 2 * k_ell
    arg = (5 ** i * ell ** exponent * n + 1) // 24
    if arg > budget:
        raise OverflowBudget(f"argument {arg} exceeds budget {budget}")
    modulus = 5 ** (i + 1)
    res = partition_mod(arg, modulus).p(arg)
    return {"case": case, "k_ell": k_ell, "m_ell": m_ell,
            "exponent": exponent, "argument": arg, "residue": res,
            "ok": res == 0}


# ---------------------------------------------------------------------------
# Golden tables.

@dataclass(frozen=True)
class TableArtifact:
    m: int
    a_labels: tuple
    rows: tuple  # dicts: ell, a (tuple), power, k, K, M_period

    def to_csv(self) -> str:
        header = ["ell", *self.a_labels, "power", "k", "K", "M_period"]
        lines = [",".join(header)]
        for row in self.rows:
            lines.append(",".join(str(v) for v in (
                row["ell"], *row["a"], row["power"], row["k"],
                row["K"], row["M_period"])))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        cols = ["ell", *self.a_labels, "power", "k", "K", "M_period"]
        data = [[str(row["ell"]), *(str(a) for a in row["a"]),
                 str(row["power"]), str(row["k"]), str(row["K"]),
                 str(row["M_period"])] for row in self.rows]
        # one column block per ell, mirroring the row-per-quantity layout
        table = list(zip(*([cols] + data)))
        widths = [max(len(x) for x in line) for line in zip(*table)]
        out = []
        for line in table:
            out.append("  ".join(x.rjust(w) for x, w in zip(line, widths)))
        return "\n".join(out) + "\n"


def _eigen_basis_37(prec: int):
    """The mod-37 eigenforms of the (11, 12) space: eta^11 (E4^3 + 24 Delta)
    and eta^11 Delta."""
    params = SpaceParams(r=11, s=12, m=37, i=1)
    f1 = eta_quotient_form(params, (3, 0, 0), prec, 37)
    f2 = eta_quotient_form(params, (0, 0, 1), prec, 37)
    combined = SlotSeries(11, (f1.series + f2.series.scale(24)))
    from .modforms import SrsBasis
    return SrsBasis(params=params, mode="eigen-mod-37",
                    forms=(combined, f2),
                    descriptors=(("E4^3+24*Delta",), ("Delta",)))


def tables(m: int, ell_list, order_cap: int = DEFAULT_ORDER_CAP,
           residual_depth: int = 8) -> TableArtifact:
    """Eigenvalue / power / order tables for the mod-m certification data."""
    if not _is_prime(m) or m < 13:
        raise ValueError(f"m must be a prime >= 13, got {m}")
    params = SpaceParams.for_prime(m)
    t = dim_Ms(params.s)
    max_ell = max(ell_list)
    prec = required_precision(params, max_ell, t, residual_depth)
    if m == 37:
        basis = _eigen_basis_37(prec)
        a_labels = ("a1", "a2")
    else:
        basis = srs_basis(params, prec, mode="echelon", modulus=m)
        a_labels = tuple(
            f"a{i}{j}" for i in range(1, t + 1) for j in range(1, t + 1)
        ) if t > 1 else ("a",)
    rows = []
    for ell in ell_list:
        A = matrix_of_t(basis, ell, residual_depth=residual_depth)
        if m == 37:
            a_vals = (A.mat[0][0], A.mat[1][1])
            if A.mat[0][1] or A.mat[1][0]:
                raise MismatchWithTheorem(
                    f"mod-37 eigen basis gave a non-diagonal matrix at ell={ell}")
        else:
            a_vals = tuple(x for row in A.mat for x in row)
        X = block_x(A)
        K = order_in_pgl(X, cap=order_cap)
        M_period = order_in_gl(X, cap=order_cap)
        k = eigen_split(A, cap=order_cap).lcm
        rows.append({"ell": ell, "a": a_vals,
                     "power": pow(ell, A.e, m), "k": k,
                     "K": K, "M_period": M_period})
    return TableArtifact(m=m, a_labels=a_labels, rows=tuple(rows))


def period_m(m: int, order_cap: int = DEFAULT_ORDER_CAP,
             residual_depth: int = 5):
    """(realized GL(t, F_m) order of T_{m^2} mod m, a-priori bound exponent A(m)).

    A(m) = 2 * dim M_{(m-r_m-2)/2}; the realized order of the U_{m^2} matrix
    on the invariant subspace exhibits the periodicity concretely.
    """
    params = SpaceParams.for_prime(m)
    t = dim_Ms(params.s)
    prec = required_precision(params, m, t, residual_depth)
    basis = srs_basis(params, prec, mode="echelon", modulus=m)
    A = matrix_of_t(basis, m, residual_depth=residual_depth)
    # Iterated order of the t x t matrix itself in GL(t, F_m).
    ident = mat_eye(t)
    P = A.mat
    k = 1
    while P != ident:
        P = mat_mul(P, A.mat, m)
        k += 1
        if k > order_cap:
            raise CapExceeded(f"GL order exceeds cap {order_cap}",
                              cap=order_cap)
    return k, 2 * dim_Ms(params.s)


# ---------------------------------------------------------------------------
# Certificate catalog (append-only JSON lines).

def catalog_append(path: str, cert: CongruenceCertificate) -> bool:
    """Append a certificate; idempotent on identical payloads.

    Returns True if a new line was written.  Raises ValueError when an entry
    with the same key exists with a different payload.
    """
    payload = _stringify(cert.to_dict())
    key = list(_stringify(list(cert.key())))
    record = json.dumps(
        {"schema_version": SCHEMA_VERSION, "key": key, "certificate": payload},
        separators=(",", ":"))
    if os.path.exists(path):
        for existing in _iter_catalog(path):
            if existing["key"] == key:
                if existing["certificate"] == payload:
                    return False
                raise ValueError(f"catalog key {key} exists with a different payload")
    with open(path, "a") as fh:
        fh.write(record + "\n")
    return True


def _iter_catalog(path: str):
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("schema_version") != SCHEMA_VERSION:
                raise ValueError(
                    f"catalog schema version {rec.get('schema_version')} "
                    f"!= {SCHEMA_VERSION}")
            yield rec


def catalog_query(path: str, m=None, i=None, ell=None):
    """Certificates matching the given m / i / ell filters."""
    out = []
    if not os.path.exists(path):
        return out
    for rec in _iter_catalog(path):
        cert = rec["certificate"]
        if m is not None and int(cert["m"]) != m:
            continue
        if i is not None and int(cert["i"]) != i:
            continue
        if ell is not None and int(cert["ell"]) != ell:
            continue
        out.append(cert)
    return out
