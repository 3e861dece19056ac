"""Exact residue arithmetic over Z/M and quadratic residue symbols.

Everything here is plain integer arithmetic; hot loops elsewhere work on raw
ints and only consult these functions at the boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import CapExceeded, NotAUnit


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """A modulus M >= 2, optionally declared as a prime power p**i.

    The declaration is verified at construction (p prime by trial division,
    and p**i == value).
    """

    value: int
    prime: int | None = None
    exponent: int | None = None

    def __post_init__(self):
        if self.value < 2:
            raise ValueError(f"modulus must be >= 2, got {self.value}")
        if (self.prime is None) != (self.exponent is None):
            raise ValueError("prime and exponent must be given together")
        if self.prime is not None:
            if not _is_prime(self.prime):
                raise ValueError(f"declared prime {self.prime} is not prime")
            if self.prime ** self.exponent != self.value:
                raise ValueError(
                    f"{self.prime}**{self.exponent} != {self.value}")

    @classmethod
    def prime_power(cls, p: int, i: int = 1) -> "Modulus":
        return cls(p ** i, prime=p, exponent=i)


def kronecker(a: int, n: int) -> int:
    """Kronecker-Jacobi symbol (a/n) for odd positive n.

    Completely multiplicative in a; zero exactly when gcd(a, n) > 1.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def pow_mod(b: int, e: int, m: int) -> int:
    """b**e mod m, e >= 0."""
    if e < 0:
        raise ValueError("exponent must be >= 0")
    return pow(b, e, m)


def inverse_mod(a: int, m: int) -> int:
    """Multiplicative inverse of a mod m; raises NotAUnit if gcd(a, m) > 1."""
    a %= m
    if gcd(a, m) != 1:
        raise NotAUnit(f"{a} is not a unit mod {m}")
    return pow(a, -1, m)


def multiplicative_order(a: int, m: int, cap: int = 10 ** 7) -> int:
    """Least k >= 1 with a**k == 1 mod m."""
    a %= m
    if gcd(a, m) != 1:
        raise NotAUnit(f"{a} is not a unit mod {m}")
    x = a
    k = 1
    while x != 1:
        x = x * a % m
        k += 1
        if k > cap:
            raise CapExceeded(f"order of {a} mod {m} exceeds cap {cap}",
                              cap=cap)
    return k


@dataclass(frozen=True)
class Residue:
    """Canonical representative of an integer mod M; ops reduce immediately."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.value)

    def _check(self, other: "Residue") -> None:
        if self.modulus.value != other.modulus.value:
            raise ValueError("modulus mismatch")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __pow__(self, e: int) -> "Residue":
        return Residue(pow_mod(self.value, e, self.modulus.value), self.modulus)

    def inverse(self) -> "Residue":
        return Residue(inverse_mod(self.value, self.modulus.value), self.modulus)
