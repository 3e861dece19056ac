"""Partition-function oracle and congruence spot checks.

The oracle is the pentagonal-number recurrence
    p(n) = sum_{k>=1} (-1)^(k+1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)],
run densely over word-size residues.  It is deliberately independent of the
series arithmetic in :mod:`partcert.qseries` so the two routes can be checked
against each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .arith import inverse_mod
from .errors import InadmissibleN, MatchFailure, OverflowBudget
from .qseries import Series, SlotSeries

DEFAULT_BUDGET = 10 ** 8

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _pent_kernel_py(N, M):
    p = np.zeros(N + 1, dtype=np.int64)
    p[0] = 1 % M
    for n in range(1, N + 1):
        acc = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            s = p[n - g1]
            g2 = g1 + k
            if g2 <= n:
                s += p[n - g2]
            if k & 1:
                acc += s
            else:
                acc -= s
            k += 1
        p[n] = acc % M
    return p


if njit is not None:
    _pent_kernel = njit(cache=True)(_pent_kernel_py)
else:  # pragma: no cover
    _pent_kernel = _pent_kernel_py


@dataclass(frozen=True)
class PartitionTable:
    """Dense residues p(0..N) mod M."""

    modulus: int
    N: int
    values: np.ndarray

    def p(self, n: int) -> int:
        """p(n) mod M; p of a negative index is 0."""
        if n < 0:
            return 0
        if n > self.N:
            raise OverflowBudget(f"p({n}) beyond table size {self.N}")
        return int(self.values[n])

    def audit(self, samples: int = 100, seed: int = 0) -> bool:
        """Re-derive `samples` random entries by an independent second pass."""
        rng = random.Random(seed)
        for _ in range(samples):
            n = rng.randrange(1, self.N + 1)
            acc = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > n:
                    break
                s = self.p(n - g1)
                g2 = g1 + k
                if g2 <= n:
                    s += self.p(n - g2)
                acc += s if k & 1 else -s
                k += 1
            if acc % self.modulus != self.p(n):
                return False
        return True


def partition_mod(N: int, M: int) -> PartitionTable:
    """All residues p(0..N) mod M by the pentagonal recurrence."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if M < 2:
        raise ValueError("modulus must be >= 2")
    if M < 2 ** 31:
        values = _pent_kernel(N, M)
    else:
        values = _pent_kernel_py(N, M)
    return PartitionTable(modulus=M, N=N, values=values)


def f_base_residue(m: int, j: int) -> int:
    """The unique n0 in (0, 24) with m^j * n0 == -1 (mod 24)."""
    mj = pow(m, j, 24)
    return (-inverse_mod(mj, 24)) % 24


def f_max_argument(m: int, j: int, slots: int) -> int:
    """Largest p-argument needed for `slots` slots of F_{m,j}."""
    n0 = f_base_residue(m, j)
    n = 24 * (slots - 1) + n0
    return (m ** j * n + 1) // 24


@dataclass(frozen=True)
class FSlotSeries:
    """F_{m,j} = sum over n == n0 (24) of p((m^j n + 1)/24) q^n, by slot."""

    m: int
    j: int
    n0: int
    slot: SlotSeries

    @property
    def modulus(self):
        return self.slot.modulus

    @property
    def prec(self):
        return self.slot.prec

    def coef(self, k):
        return self.slot.coef(k)


def f_series(m: int, j: int, slots: int, M: int,
             budget: int = DEFAULT_BUDGET,
             table: PartitionTable | None = None) -> FSlotSeries:
    """Build F_{m,j} to `slots` slots mod M from the partition oracle."""
    if m < 5 or j < 1:
        raise ValueError("need prime m >= 5 and j >= 1")
    n0 = f_base_residue(m, j)
    top = f_max_argument(m, j, slots)
    if top > budget:
        raise OverflowBudget(
            f"F_({m},{j}) to {slots} slots needs p up to {top} > budget {budget}")
    if table is None or table.N < top or table.modulus != M:
        table = partition_mod(top, M)
    mj = m ** j
    coeffs = [table.p((mj * (24 * k + n0) + 1) // 24) for k in range(slots)]
    return FSlotSeries(m=m, j=j, n0=n0,
                       slot=SlotSeries(n0, Series(tuple(coeffs), 0, M)))


def match_to_basis(F: FSlotSeries, basis, depth: int | None = None):
    """Express F as a combination of the triangular basis mod M.

    Solves on the leading t slots, then verifies every remaining slot up to
    `depth`.  Returns (coefficient vector, verified depth).
    """
    if basis.r != F.n0:
        raise ValueError(
            f"slot residue mismatch: basis r={basis.r}, F n0={F.n0}")
    modulus = F.modulus
    t = basis.t
    if depth is None:
        depth = min(F.prec, basis.prec)
    if depth < t:
        raise MatchFailure(f"depth {depth} < dimension {t}")
    if F.prec < depth or basis.prec < depth:
        raise MatchFailure(
            f"insufficient precision for depth {depth}")
    g = list(F.slot.series.coeffs[:depth])
    coeffs = []
    for j in range(t):
        c = g[j] % modulus if modulus is not None else g[j]
        coeffs.append(c)
        if c:
            fj = basis.forms[j].series.coeffs
            for n in range(j, depth):
                g[n] -= c * fj[n]
                if modulus is not None:
                    g[n] %= modulus
    for n in range(t, depth):
        if (g[n] % modulus if modulus is not None else g[n]) != 0:
            raise MatchFailure(
                f"mismatch at slot {n}: residual {g[n]}", slot=n)
    return tuple(coeffs), depth


def admissible_ns(m: int, i: int, ell: int, e: int, count: int):
    """First `count` n with m^i ell^e n == -1 (mod 24), ell and m not dividing n."""
    base = pow(m, i, 24) * pow(ell, e, 24) % 24
    n_req = (-inverse_mod(base, 24)) % 24
    out = []
    n = n_req
    while len(out) < count:
        if n % ell != 0 and n % m != 0 and n > 0:
            out.append(n)
        n += 24
    return out


def check_admissible(m: int, i: int, ell: int, e: int, n: int) -> None:
    if (pow(m, i, 24) * pow(ell, e, 24) * n + 1) % 24 != 0:
        raise InadmissibleN(
            f"m^i ell^e n = {m}^{i} {ell}^{e} {n} != -1 mod 24")
    if n % ell == 0:
        raise InadmissibleN(f"n={n} is divisible by ell={ell}")
    if n % m == 0:
        raise InadmissibleN(f"n={n} is divisible by m={m}")


def spot_check_congruence(m: int, i: int, ell: int, e: int,
                          n_list=None, count: int = 3,
                          budget: int = DEFAULT_BUDGET):
    """Evaluate p((m^i ell^e n + 1)/24) mod m^i at admissible n.

    Returns a list of dicts with n, the exact argument, the residue (when
    feasible) and a status of "pass", "fail" or "infeasible".
    """
    if n_list is None:
        n_list = admissible_ns(m, i, ell, e, count)
    else:
        for n in n_list:
            check_admissible(m, i, ell, e, n)
    M = m ** i
    scale = m ** i * ell ** e
    results = []
    feasible = [(n, (scale * n + 1) // 24) for n in n_list
                if (scale * n + 1) // 24 <= budget]
    table = None
    if feasible:
        table = partition_mod(max(a for _, a in feasible), M)
    for n in n_list:
        arg = (scale * n + 1) // 24
        if arg > budget:
            results.append({"n": n, "argument": arg, "residue": None,
                            "status": "infeasible"})
            continue
        res = table.p(arg)
        results.append({"n": n, "argument": arg, "residue": res,
                        "status": "pass" if res == 0 else "fail"})
    return results


def check_fum_consistency(m: int, j: int, slots: int, M: int,
                          budget: int = DEFAULT_BUDGET) -> bool:
    """Definitional identity F_{m,j}|U_m = F_{m,j+1}, checked to `slots` slots."""
    n0j = f_base_residue(m, j)
    n0j1 = f_base_residue(m, j + 1)
    # Slot k of F_{m,j+1} reads index n = m*(24k + n0j1) of F_{m,j}.
    top_n = m * (24 * (slots - 1) + n0j1)
    src_slots = (top_n - n0j) // 24 + 1
    Fj = f_series(m, j, src_slots, M, budget=budget)
    Fj1 = f_series(m, j + 1, slots, M, budget=budget)
    for k in range(slots):
        n = m * (24 * k + n0j1)
        src_k = (n - n0j) // 24
        if Fj.coef(src_k) != Fj1.coef(k):
            return False
    return True
