"""Half-integral-weight Hecke action on slot series and matrix orders.

The operator T_{ell^2} acts on a form supported on exponents 24n + r via
three slot-index maps (contraction, twist-weighted identity, dilation); on a
triangular basis its matrix is extracted by forward substitution and the
remaining slots are verified to vanish, which is an empirical check of the
invariant-subspace theorem (a residual there means a bug, never a warning).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

import numpy as np
import sympy

from .arith import kronecker, multiplicative_order, _is_prime
from .errors import CapExceeded, InsufficientPrecision, SpanViolation
from .modforms import SpaceParams, SrsBasis, sturm_slots
from .qseries import Series, SlotSeries, slot_delta, slot_twist, slot_u, slot_v


# ---------------------------------------------------------------------------
# Small exact matrix helpers (plain nested tuples of Python ints).

def mat_eye(t):
    return tuple(tuple(1 if i == j else 0 for j in range(t)) for i in range(t))


def mat_zero(t):
    return tuple((0,) * t for _ in range(t))


def mat_mod(A, modulus):
    if modulus is None:
        return tuple(tuple(row) for row in A)
    return tuple(tuple(x % modulus for x in row) for row in A)


def mat_mul(A, B, modulus=None):
    t = len(A)
    u = len(B[0])
    cols = list(zip(*B))
    out = []
    for row in A:
        orow = []
        for col in cols:
            s = sum(a * b for a, b in zip(row, col))
            orow.append(s % modulus if modulus is not None else s)
        out.append(tuple(orow))
    return tuple(out)


def mat_add(A, B, modulus=None):
    return tuple(
        tuple((a + b) % modulus if modulus is not None else a + b
              for a, b in zip(ra, rb))
        for ra, rb in zip(A, B))


def mat_scale(A, k, modulus=None):
    return tuple(
        tuple(k * a % modulus if modulus is not None else k * a for a in row)
        for row in A)


def mat_pow(A, e, modulus=None):
    result = mat_eye(len(A))
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base, modulus)
        e >>= 1
        if e:
            base = mat_mul(base, base, modulus)
    return result


# ---------------------------------------------------------------------------
# T_{ell^2} on slot series.

def t_ell2(f: SlotSeries, params: SpaceParams, ell: int,
           out_prec: int | None = None) -> SlotSeries:
    """Apply T_{ell^2} to a form supported on exponents 24n + r.

    Output slot n carries
        a(ell^2 n + d)
        + kronecker((-1)^((r-1)/2) * 12 * (24n+r), ell) * ell^(lam-1) * a(n)
        + ell^(2*lam-1) * a((n-d)/ell^2)          [only when ell^2 | n-d]
    with d = r*(ell^2-1)/24 and lam = s + (r-1)/2.
    """
    if ell in (2, 3):
        raise ValueError("T_{ell^2} is not defined here for ell in {2, 3}")
    if not _is_prime(ell):
        raise ValueError(f"ell must be prime, got {ell}")
    r = params.r
    if f.r != r:
        raise ValueError(f"slot residue {f.r} does not match params r={r}")
    lam = params.lam
    if lam < 1:
        raise ValueError(f"lambda = {lam} < 1: weight too small")
    L = ell * ell
    d = slot_delta(r, ell)
    P = f.prec
    avail = (P - 1 - d) // L + 1 if P > d else 0
    if out_prec is None:
        out_prec = avail
    if out_prec > avail:
        raise InsufficientPrecision(
            f"need input precision >= {L * (out_prec - 1) + d + 1}, have {P}")
    modulus = f.modulus
    mid = ell ** (lam - 1)
    third = ell ** (2 * lam - 1)
    if modulus is not None:
        mid %= modulus
        third %= modulus
    eps = (-1) ** ((r - 1) // 2) * 12
    c = f.series.coeffs
    out = []
    for n in range(out_prec):
        v = c[L * n + d]
        v += kronecker(eps * (24 * n + r), ell) * mid * c[n]
        if n >= d and (n - d) % L == 0:
            v += third * c[(n - d) // L]
        out.append(v % modulus if modulus is not None else v)
    return SlotSeries(r, Series(tuple(out), 0, modulus))


def eigenvalue(f: SlotSeries, params: SpaceParams, ell: int,
               lead_slot: int = 0, check_slots: int = 0) -> int:
    """Hecke eigenvalue of a normalized eigenform (leading coefficient 1).

    Reads T f at the leading slot; optionally verifies proportionality on
    `check_slots` further slots.
    """
    tf = t_ell2(f, params, ell, out_prec=lead_slot + 1 + check_slots)
    a = tf.coef(lead_slot)
    modulus = f.modulus
    for n in range(lead_slot + 1, lead_slot + 1 + check_slots):
        want = a * f.coef(n)
        got = tf.coef(n)
        diff = got - want
        if (diff % modulus if modulus is not None else diff) != 0:
            raise SpanViolation(
                f"form is not an eigenform for T_{ell}^2 at slot {n}")
    return a


# ---------------------------------------------------------------------------
# Matrix of T_{ell^2} on a triangular basis.

@dataclass(frozen=True)
class HeckeMatrix:
    """t x t matrix A with (f_1..f_t)^T | T_{ell^2} = A (f_1..f_t)^T."""

    mat: tuple
    ell: int
    params: SpaceParams
    modulus: int | None
    residual_depth: int
    basis_mode: str

    @property
    def t(self):
        return len(self.mat)

    @property
    def e(self):
        """Power of ell in the block companion matrix: r + 2s - 2."""
        return self.params.r + 2 * self.params.s - 2


def required_precision(params: SpaceParams, ell: int, t: int,
                       residual_depth: int) -> int:
    """Input slots needed to extract and verify the Hecke matrix."""
    L = ell * ell
    return L * (t + residual_depth - 1) + slot_delta(params.r, ell) + 1


def matrix_of_t(basis: SrsBasis, ell: int,
                residual_depth: int | None = None) -> HeckeMatrix:
    """Extract A by forward substitution on the leading t slots.

    The remaining `residual_depth` slots of every image must be matched
    exactly; a mismatch falsifies the invariant-subspace property and is
    raised as a fatal SpanViolation.
    """
    params = basis.params
    t = basis.t
    if residual_depth is None:
        residual_depth = max(sturm_slots(params) - t, 1)
    depth = t + residual_depth
    need = required_precision(params, ell, t, residual_depth)
    if basis.prec < need:
        raise InsufficientPrecision(
            f"basis precision {basis.prec} < required {need}")
    modulus = basis.modulus
    rows = []
    for i, f in enumerate(basis.forms):
        tf = t_ell2(f, params, ell, out_prec=depth)
        g = list(tf.series.coeffs)
        row = []
        for j in range(t):
            c = g[j]
            row.append(c % modulus if modulus is not None else c)
            if c:
                fj = basis.forms[j].series.coeffs
                for n in range(j, depth):
                    g[n] -= c * fj[n]
                    if modulus is not None:
                        g[n] %= modulus
        for n in range(t, depth):
            if (g[n] % modulus if modulus is not None else g[n]) != 0:
                raise SpanViolation(
                    f"T_{ell}^2 f_{i + 1} leaves the span at slot {n} "
                    f"(residual {g[n]})")
        rows.append(tuple(row))
    return HeckeMatrix(mat=tuple(rows), ell=ell, params=params,
                       modulus=modulus, residual_depth=residual_depth,
                       basis_mode=basis.mode)


# ---------------------------------------------------------------------------
# Recursion matrices and the block companion matrix.

def recursion_scalars(params: SpaceParams, ell: int):
    """(b1, c1): B_1 = b1*I and C_1 = c1*I in the U_{ell^2} recursion."""
    r, s = params.r, params.s
    b1 = -ell ** (s + (r - 3) // 2) * kronecker((-1) ** ((r - 1) // 2) * 12, ell)
    c1 = -ell ** (r + 2 * s - 2)
    return b1, c1


def recursion_matrices(A: HeckeMatrix, k: int):
    """(A_k, B_k, C_k) with (A_k; A_{k-1}) = X^k (I; 0), B_k = b1 A_{k-1},
    C_k = c1 A_{k-1}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    modulus = A.modulus
    b1, c1 = recursion_scalars(A.params, A.ell)
    t = A.t
    prev = mat_eye(t)            # A_0
    cur = mat_mod(A.mat, modulus)  # A_1
    for _ in range(k - 1):
        nxt = mat_add(mat_mul(cur, A.mat, modulus),
                      mat_scale(prev, c1, modulus), modulus)
        prev, cur = cur, nxt
    Bk = mat_scale(prev, b1, modulus)
    Ck = mat_scale(prev, c1, modulus)
    return cur, Bk, Ck


@dataclass(frozen=True)
class BlockMatrix:
    """2t x 2t block companion matrix (A, -ell^e I; I, 0)."""

    mat: tuple
    e: int
    ell: int
    modulus: int | None

    @property
    def t(self):
        return len(self.mat) // 2


def block_companion(A, ell: int, e: int, modulus=None) -> BlockMatrix:
    t = len(A)
    top_right = ((-(ell ** e)) % modulus) if modulus is not None else -(ell ** e)
    rows = []
    for i in range(t):
        rows.append(tuple(A[i]) + tuple(top_right if j == i else 0
                                        for j in range(t)))
    for i in range(t):
        rows.append(tuple(1 if j == i else 0 for j in range(t)) + (0,) * t)
    return BlockMatrix(mat=mat_mod(rows, modulus), e=e, ell=ell,
                       modulus=modulus)


def block_x(A: HeckeMatrix) -> BlockMatrix:
    """The block matrix X = (A, -ell^(r+2s-2) I; I, 0) over Z/M."""
    return block_companion(A.mat, A.ell, A.e, A.modulus)


# ---------------------------------------------------------------------------
# Matrix orders in GL / PGL over Z/M.

def _np_matrix(X, modulus):
    arr = np.array(X, dtype=object)
    # int64 is safe when a full row of products cannot overflow.
    if (modulus - 1) ** 2 * len(X) < 2 ** 62:
        arr = arr.astype(np.int64)
    return arr


def _scalar_of(P, modulus):
    """c if P == c*I with c a unit mod modulus, else None."""
    n = P.shape[0]
    c = int(P[0, 0])
    if gcd(c, modulus) != 1:
        return None
    for i in range(n):
        if int(P[i, i]) != c:
            return None
    if np.count_nonzero(P) != n:
        return None
    return c


def _pgl_order_and_scalar(X: BlockMatrix, cap: int):
    modulus = X.modulus
    if modulus is None:
        raise ValueError("matrix orders are defined over Z/M only")
    if gcd(X.ell, modulus) != 1:
        raise ValueError(f"ell={X.ell} is not a unit mod {modulus}")
    M0 = _np_matrix(X.mat, modulus)
    P = M0.copy()
    k = 1
    while True:
        c = _scalar_of(P, modulus)
        if c is not None:
            return k, c
        if k >= cap:
            raise CapExceeded(
                f"PGL order exceeds cap {cap}",
                partial_power=tuple(map(tuple, P.tolist())), cap=cap)
        P = (P @ M0) % modulus
        k += 1


def order_in_pgl(X: BlockMatrix, cap: int = 10 ** 7) -> int:
    """Least k with X^k a unit scalar multiple of I over Z/M."""
    k, _ = _pgl_order_and_scalar(X, cap)
    return k


def order_in_gl(X: BlockMatrix, cap: int = 10 ** 7) -> int:
    """Least k with X^k = I over Z/M.

    Computed as K * ord(c) where X^K = c*I realizes the PGL order; verified
    by one binary-powering check.
    """
    K, c = _pgl_order_and_scalar(X, cap)
    modulus = X.modulus
    order = K * multiplicative_order(c, modulus)
    if order > cap:
        raise CapExceeded(f"GL order {order} exceeds cap {cap}", cap=cap)
    if mat_pow(X.mat, order, modulus) != mat_eye(len(X.mat)):
        raise SpanViolation("GL order verification failed")  # unreachable
    return order


# ---------------------------------------------------------------------------
# Eigen-splitting of the characteristic polynomial (prime modulus only).

@dataclass(frozen=True)
class EigenSplit:
    """Per-irreducible-factor local PGL orders and their lcm."""

    components: tuple   # (degree, coeffs of the monic factor, local order)
    lcm: int
    split: bool         # False when falling back to the full-X order


def eigen_split(A: HeckeMatrix, cap: int = 10 ** 7) -> EigenSplit:
    """Factor charpoly(A) mod m; companion-block local orders and their lcm.

    Requires a prime modulus.  Falls back to the full block-matrix order when
    the factorization has repeated factors.
    """
    m = A.modulus
    if m is None or not _is_prime(m):
        raise ValueError("eigen_split needs a prime modulus")
    x = sympy.Symbol("x")
    charpoly = sympy.Matrix(
        [list(row) for row in A.mat]).charpoly(x).as_expr()
    poly = sympy.Poly(charpoly, x, modulus=m, symmetric=False)
    _, factors = poly.factor_list()
    if any(mult > 1 for _, mult in factors):
        X = block_x(A)
        K = order_in_pgl(X, cap)
        return EigenSplit(components=((2 * A.t, None, K),), lcm=K, split=False)
    components = []
    orders = []
    for fac, _ in factors:
        coeffs = [int(c) % m for c in fac.all_coeffs()]  # monic, degree d
        d = len(coeffs) - 1
        # Companion matrix: subdiagonal 1s, last column -(coeff of x^i).
        comp = [[0] * d for _ in range(d)]
        for i in range(1, d):
            comp[i][i - 1] = 1
        for i in range(d):
            comp[i][d - 1] = (-coeffs[d - i]) % m
        local = block_companion(tuple(map(tuple, comp)), A.ell, A.e, m)
        k = order_in_pgl(local, cap)
        components.append((d, tuple(coeffs), k))
        orders.append(k)
    return EigenSplit(components=tuple(components), lcm=lcm(*orders),
                      split=True)


# ---------------------------------------------------------------------------
# Direct verification of the U_{ell^2}^k recursion.

def verify_recursion(basis: SrsBasis, ell: int, k: int,
                     check_slots: int, A: HeckeMatrix | None = None) -> dict:
    """Check (f)|U_{ell^2}^k == A_k f + B_k g + C_k f|V_{ell^2} slot by slot."""
    if A is None:
        A = matrix_of_t(basis, ell,
                        residual_depth=max(1, check_slots))
    Ak, Bk, Ck = recursion_matrices(A, k)
    modulus = basis.modulus
    L = ell * ell
    d = slot_delta(basis.r, ell)
    lhs = []
    for f in basis.forms:
        g = f
        for _ in range(k):
            g = slot_u(g, ell)
        lhs.append(g)
    depth = min(check_slots, min(g.prec for g in lhs))
    twists = [slot_twist(f, ell) for f in basis.forms]
    dils = [slot_v(f, ell) for f in basis.forms]
    max_slot = 0
    for i in range(basis.t):
        for n in range(depth):
            v = 0
            for j in range(basis.t):
                v += Ak[i][j] * basis.forms[j].coef(n)
                v += Bk[i][j] * twists[j].coef(n)
                dv = dils[j].coef(n) if n < dils[j].prec else 0
                v += Ck[i][j] * dv
            diff = lhs[i].coef(n) - v
            if (diff % modulus if modulus is not None else diff) != 0:
                return {"equal": False, "ell": ell, "k": k,
                        "failed_form": i, "failed_slot": n,
                        "slots_checked": n}
            max_slot = n
    return {"equal": True, "ell": ell, "k": k, "slots_checked": max_slot + 1}
