"""Truncated power-series arithmetic in q.

Two coefficient rings are supported: exact arbitrary-precision integers
(``modulus=None``) and word-size residues mod M.  A :class:`Series` stores a
dense coefficient window ``c[0..P)`` at valuation ``v`` and represents
``sum_j c[j] q^(v+j) + O(q^(v+P))``.

:class:`SlotSeries` is the stride-24 representation for forms supported on
exponents ``24n + r``: slot index n carries the coefficient of ``q^(24n+r)``.
For primes ``ell >= 5`` we have ``ell**2 == 1 (mod 24)``, so the Hecke-side
exponent maps act integrally on slot indices.

Multiplication is exact on every coefficient below the result precision.
Large dense products are evaluated by Kronecker substitution (pack the
coefficients into one big integer, multiply with gmpy2, unpack); sparse
operands take a skip-zeros schoolbook path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import gmpy2

from .arith import kronecker, inverse_mod, _is_prime
from .errors import (
    InsufficientPrecision,
    NonzeroValuation,
    NotAUnit,
    RingMismatch,
)

# Above this many nonzero-pair products, switch to Kronecker substitution.
_SCHOOLBOOK_LIMIT = 1 << 17


def _nonzero(c):
    return [(i, x) for i, x in enumerate(c) if x]


def _schoolbook(ca, cb, out_len):
    out = [0] * out_len
    nza = _nonzero(ca[:out_len])
    for i, x in nza:
        lim = out_len - i
        for j, y in enumerate(cb[:lim]):
            if y:
                out[i + j] += x * y
    return out


def _pack(coeffs, width):
    buf = bytearray(len(coeffs) * width)
    pos = 0
    for c in coeffs:
        if c:
            buf[pos:pos + width] = c.to_bytes(width, "little")
        pos += width
    return gmpy2.mpz(int.from_bytes(buf, "little"))


def _unpack(value, width, out_len):
    # Keep only the low out_len limbs; the product may extend past the window.
    value = int(value) & ((1 << (8 * width * out_len)) - 1)
    data = value.to_bytes(out_len * width, "little")
    return [
        int.from_bytes(data[i * width:(i + 1) * width], "little")
        for i in range(out_len)
    ]


def _kron_conv(ca, cb, out_len, modulus):
    """Truncated convolution via Kronecker substitution."""
    if modulus is not None:
        maxa = modulus - 1
        bound = min(len(ca), len(cb), out_len) * maxa * maxa
        width = -(-(bound.bit_length() + 1) // 8)
        prod = _pack(ca, width) * _pack(cb, width)
        return [c % modulus for c in _unpack(prod, width, out_len)]
    ap = [x if x > 0 else 0 for x in ca]
    an = [-x if x < 0 else 0 for x in ca]
    bp = [x if x > 0 else 0 for x in cb]
    bn = [-x if x < 0 else 0 for x in cb]
    maxa = max(max(ap, default=0), max(an, default=0))
    maxb = max(max(bp, default=0), max(bn, default=0))
    bound = max(2 * min(len(ca), len(cb), out_len) * maxa * maxb + 1,
                maxa, maxb)
    width = -(-(bound.bit_length() + 1) // 8)
    pap, pan = _pack(ap, width), _pack(an, width)
    pbp, pbn = _pack(bp, width), _pack(bn, width)
    pos = _unpack(pap * pbp + pan * pbn, width, out_len)
    neg = _unpack(pap * pbn + pan * pbp, width, out_len)
    return [p - n for p, n in zip(pos, neg)]


@dataclass(frozen=True)
class Series:
    """Truncated power series: sum of coeffs[j] * q**(val+j) + O(q**(val+P))."""

    coeffs: tuple
    val: int = 0
    modulus: int | None = None

    @classmethod
    def make(cls, coeffs, val=0, modulus=None):
        if modulus is None:
            return cls(tuple(int(c) for c in coeffs), val, None)
        return cls(tuple(int(c) % modulus for c in coeffs), val, modulus)

    @classmethod
    def one(cls, prec, modulus=None):
        return cls.make([1] + [0] * (prec - 1), 0, modulus)

    @property
    def prec(self):
        return len(self.coeffs)

    def coef(self, n):
        """Coefficient of q**n; n must lie below the precision bound."""
        if n >= self.val + self.prec:
            raise InsufficientPrecision(
                f"coefficient of q^{n} not stored (bound q^{self.val + self.prec})")
        j = n - self.val
        return self.coeffs[j] if j >= 0 else 0

    def _check_ring(self, other):
        if self.modulus != other.modulus:
            raise RingMismatch(
                f"modulus {self.modulus} vs {other.modulus}")

    def normalize(self):
        """Strip leading stored zeros, increasing the valuation."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return Series(self.coeffs[k:], self.val + k, self.modulus)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return Series(self.coeffs[:prec], self.val, self.modulus)

    def reduce(self, modulus):
        """Reduce coefficients mod `modulus` (from exact Z or a multiple)."""
        if self.modulus is not None and self.modulus % modulus != 0:
            raise RingMismatch(
                f"cannot reduce mod {modulus} from mod {self.modulus}")
        return Series(tuple(c % modulus for c in self.coeffs), self.val, modulus)

    def _dense(self):
        """Coefficients as a dense list from exponent 0 (valuation folded in)."""
        return [0] * self.val + list(self.coeffs)

    def dense0(self):
        """Equivalent series re-based at valuation 0 (zeros made explicit)."""
        if self.val == 0:
            return self
        return Series(tuple(self._dense()), 0, self.modulus)

    def __add__(self, other):
        self._check_ring(other)
        val = min(self.val, other.val)
        bound = min(self.val + self.prec, other.val + other.prec)
        out = [0] * (bound - val)
        for j, c in enumerate(self.coeffs):
            if self.val + j < bound:
                out[self.val + j - val] += c
        for j, c in enumerate(other.coeffs):
            if other.val + j < bound:
                out[other.val + j - val] += c
        return Series.make(out, val, self.modulus)

    def __neg__(self):
        return Series.make([-c for c in self.coeffs], self.val, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return Series.make([k * c for c in self.coeffs], self.val, self.modulus)

    def __mul__(self, other):
        self._check_ring(other)
        out_len = min(self.prec, other.prec)
        if out_len == 0:
            return Series((), self.val + other.val, self.modulus)
        nza = sum(1 for c in self.coeffs[:out_len] if c)
        nzb = sum(1 for c in other.coeffs[:out_len] if c)
        if nza * nzb <= _SCHOOLBOOK_LIMIT:
            out = _schoolbook(list(self.coeffs), list(other.coeffs), out_len)
            return Series.make(out, self.val + other.val, self.modulus)
        out = _kron_conv(list(self.coeffs), list(other.coeffs), out_len,
                         self.modulus)
        return Series(tuple(out), self.val + other.val, self.modulus)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("exponent must be >= 0")
        result = Series.one(self.prec, self.modulus)
        if e == 0:
            return result
        base = self
        while True:
            if e & 1:
                result = result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def inverse(self):
        """Multiplicative inverse; requires valuation 0 and a unit constant."""
        if self.val != 0:
            raise NonzeroValuation(f"valuation {self.val} != 0")
        if self.prec == 0:
            raise InsufficientPrecision("empty series")
        c0 = self.coeffs[0]
        if self.modulus is None:
            if c0 not in (1, -1):
                raise NotAUnit(f"constant term {c0} is not a unit in Z")
            inv0 = c0
        else:
            if gcd(c0, self.modulus) != 1:
                raise NotAUnit(f"constant term {c0} is not a unit mod {self.modulus}")
            inv0 = inverse_mod(c0, self.modulus)
        P = self.prec
        nz = [(k, c) for k, c in enumerate(self.coeffs) if c and k > 0]
        out = [0] * P
        out[0] = inv0 if self.modulus is None else inv0 % self.modulus
        for n in range(1, P):
            s = 0
            for k, c in nz:
                if k > n:
                    break
                s += c * out[n - k]
            v = -inv0 * s
            out[n] = v if self.modulus is None else v % self.modulus
        return Series(tuple(out), 0, self.modulus)


def u_op(a: Series, N: int) -> Series:
    """f(q)|U_N: keep coefficients at exponents divisible by N, contract n -> n/N.

    Output precision: all exponents below (val+prec) are known, so the result
    is dense from exponent 0 with ceil((val+prec)/N) coefficients.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    dense = a._dense()
    bound = a.val + a.prec
    out_len = -(-bound // N)
    out = [dense[j * N] if j * N < bound else 0 for j in range(out_len)]
    return Series(tuple(out), 0, a.modulus)


def v_op(a: Series, N: int) -> Series:
    """f(q)|V_N: dilate exponents n -> N*n.

    Output valuation N*val; stored window covers exponents up to N*(val+prec-1).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if a.prec == 0:
        return Series((), N * a.val, a.modulus)
    out = [0] * (N * (a.prec - 1) + 1)
    for j, c in enumerate(a.coeffs):
        out[N * j] = c
    return Series(tuple(out), N * a.val, a.modulus)


def twist(a: Series, ell: int) -> Series:
    """f tensor (./ell): multiply the coefficient of q**n by kronecker(n, ell)."""
    if ell < 3 or ell % 2 == 0 or not _is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    out = [kronecker(a.val + j, ell) * c for j, c in enumerate(a.coeffs)]
    return Series.make(out, a.val, a.modulus)


def frobenius_pow(a: Series, e: int, p: int) -> Series:
    """a**e mod p using (sum c_n q^n)**p == sum c_n q^(p*n) mod p.

    Requires a.modulus == p prime.  Correct only modulo p; exposed separately
    from ``__pow__`` and cross-tested against it.
    """
    if a.modulus != p or not _is_prime(p):
        raise ValueError("frobenius_pow needs a prime modulus series")
    if e < p:
        return a ** e
    P = a.prec
    # a**p truncated to P slots needs only the first ceil(P/p) coefficients.
    head = a.truncate(-(-P // p))
    dil = v_op(head, p)
    dense = dil._dense()[:P]
    dense += [0] * (P - len(dense))
    ap = Series(tuple(dense), 0, p)
    return frobenius_pow(ap, e // p, p) * (a ** (e % p))


@dataclass(frozen=True)
class SlotSeries:
    """Series supported on exponents 24n + r, stored by slot index n."""

    r: int
    series: Series

    def __post_init__(self):
        if not (0 < self.r < 24) or self.r % 2 == 0:
            raise ValueError(f"r must be odd with 0 < r < 24, got {self.r}")
        if self.series.val != 0:
            raise ValueError("slot series must be stored densely from slot 0")

    @property
    def prec(self):
        return self.series.prec

    @property
    def modulus(self):
        return self.series.modulus

    def coef(self, n):
        return self.series.coef(n)

    def __add__(self, other):
        if self.r != other.r:
            raise RingMismatch(f"slot residue {self.r} vs {other.r}")
        return SlotSeries(self.r, self.series + other.series)

    def __sub__(self, other):
        if self.r != other.r:
            raise RingMismatch(f"slot residue {self.r} vs {other.r}")
        return SlotSeries(self.r, self.series - other.series)

    def scale(self, k):
        return SlotSeries(self.r, self.series.scale(k))

    def truncate(self, prec):
        return SlotSeries(self.r, self.series.truncate(prec))

    def reduce(self, modulus):
        return SlotSeries(self.r, self.series.reduce(modulus))


def _check_slot_prime(ell):
    if ell in (2, 3):
        raise ValueError("slot maps need ell >= 5 (ell^2 == 1 mod 24)")
    if ell < 5 or not _is_prime(ell):
        raise ValueError(f"ell must be a prime >= 5, got {ell}")


def slot_delta(r: int, ell: int) -> int:
    """Shift delta = r*(ell^2 - 1)/24 in the slot-index maps."""
    return r * (ell * ell - 1) // 24


def slot_u(a: SlotSeries, ell: int) -> SlotSeries:
    """U_{ell^2} at slot level: output slot n reads source slot ell^2*n + delta."""
    _check_slot_prime(ell)
    d = slot_delta(a.r, ell)
    L = ell * ell
    P = a.prec
    out_len = (P - 1 - d) // L + 1 if P > d else 0
    out = [a.series.coeffs[L * n + d] for n in range(out_len)]
    return SlotSeries(a.r, Series(tuple(out), 0, a.modulus))


def slot_v(a: SlotSeries, ell: int) -> SlotSeries:
    """V_{ell^2} at slot level: source slot n lands in slot ell^2*n + delta."""
    _check_slot_prime(ell)
    d = slot_delta(a.r, ell)
    L = ell * ell
    if a.prec == 0:
        return a
    out = [0] * (L * (a.prec - 1) + d + 1)
    for n, c in enumerate(a.series.coeffs):
        out[L * n + d] = c
    return SlotSeries(a.r, Series(tuple(out), 0, a.modulus))


def slot_twist(a: SlotSeries, ell: int) -> SlotSeries:
    """Twist by (./ell) on the underlying q-expansion: slot n picks up (24n+r/ell)."""
    if ell < 3 or ell % 2 == 0 or not _is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    out = [kronecker(24 * n + a.r, ell) * c
           for n, c in enumerate(a.series.coeffs)]
    return SlotSeries(a.r, Series.make(out, 0, a.modulus))
