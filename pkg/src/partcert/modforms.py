"""Level-one building blocks and the eta-quotient bases of S_{r,s}.

The invariant subspaces handled here are spanned by eta(24t)^r * f(24t) with
f running over an integral basis of M_s(SL(2,Z)).  In the slot variable
(exponent = 24n + r) such a form is simply  prod(1-q^n)^r * f(q), so all
constructions happen in ordinary truncated series and are wrapped into
:class:`~partcert.qseries.SlotSeries` at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InsufficientPrecision
from .qseries import Series, SlotSeries, frobenius_pow
from .arith import _is_prime


def eta(prec: int, modulus=None) -> Series:
    """prod_{n>=1} (1 - q^n), by the pentagonal number theorem."""
    out = [0] * prec
    k = 1
    out[0] = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= prec and g2 >= prec:
            break
        s = -1 if k % 2 else 1
        if g1 < prec:
            out[g1] = s
        if g2 < prec:
            out[g2] = s
        k += 1
    return Series.make(out, 0, modulus)


def eta3(prec: int, modulus=None) -> Series:
    """prod_{n>=1} (1 - q^n)^3, by Jacobi's identity."""
    out = [0] * prec
    k = 0
    while True:
        g = k * (k + 1) // 2
        if g >= prec:
            break
        out[g] = (2 * k + 1) * (-1 if k % 2 else 1)
        k += 1
    return Series.make(out, 0, modulus)


def eta_power(r: int, prec: int, modulus=None) -> Series:
    """prod(1-q^n)^r.  Uses the Frobenius dilation shortcut mod a prime."""
    e = eta(prec, modulus)
    if modulus is not None and r >= modulus and _is_prime(modulus):
        return frobenius_pow(e, r, modulus)
    return e ** r


def _divisor_power_sums(k: int, prec: int):
    sig = [0] * prec
    for d in range(1, prec):
        dk = d ** k
        for n in range(d, prec, d):
            sig[n] += dk
    return sig


def eisenstein(k: int, prec: int, modulus=None) -> Series:
    """E_4 = 1 + 240*sum sigma_3(n) q^n or E_6 = 1 - 504*sum sigma_5(n) q^n."""
    if k == 4:
        mult, power = 240, 3
    elif k == 6:
        mult, power = -504, 5
    else:
        raise ValueError(f"only weights 4 and 6 are provided, got {k}")
    sig = _divisor_power_sums(power, prec)
    out = [mult * s for s in sig]
    out[0] = 1
    return Series.make(out, 0, modulus)


def delta(prec: int, modulus=None) -> Series:
    """The discriminant form: q * prod(1-q^n)^24 (valuation 1)."""
    e24 = eta_power(24, prec, modulus)
    return Series(e24.coeffs, 1, modulus)


def dim_Ms(s: int) -> int:
    """dim M_s(SL(2,Z)) for even s >= 0."""
    if s % 2 != 0 or s < 0:
        raise ValueError(f"s must be even and >= 0, got {s}")
    if s % 12 == 2:
        return s // 12
    return s // 12 + 1


def dim_srs(m: int) -> int:
    """dim S_{r_m,(m-r_m-2)/2} = floor(m/12) - floor(m/24) for prime m >= 13."""
    if m < 13 or not _is_prime(m):
        raise ValueError(f"m must be a prime >= 13, got {m}")
    return m // 12 - m // 24


def eta_exponent_for_prime(m: int) -> int:
    """r_m: the integer 0 < r < 24 with m == -r mod 24."""
    r = (-m) % 24
    if not (0 < r < 24):
        raise ValueError(f"no valid r for m={m}")
    return r


@dataclass(frozen=True)
class SpaceParams:
    """Parameters of the space spanned by eta(24t)^r * M_s(SL(2,Z))(24t)."""

    r: int
    s: int
    m: int | None = None
    i: int | None = None

    def __post_init__(self):
        if not (0 < self.r < 24) or self.r % 2 == 0:
            raise ValueError(f"r must be odd with 0 < r < 24, got {self.r}")
        if self.s % 2 != 0 or self.s < 0:
            raise ValueError(f"s must be even and >= 0, got {self.s}")
        if self.m is not None and self.i == 1:
            if (self.m + self.r) % 24 != 0:
                raise ValueError(f"m={self.m} must be == -r mod 24")
            if self.s != (self.m - self.r - 2) // 2:
                raise ValueError("s must equal (m-r-2)/2 when i=1")

    @classmethod
    def for_prime(cls, m: int) -> "SpaceParams":
        r = eta_exponent_for_prime(m)
        return cls(r=r, s=(m - r - 2) // 2, m=m, i=1)

    @property
    def lam(self) -> int:
        """Integral part lambda of the half-integral weight s + r/2."""
        return self.s + (self.r - 1) // 2

    @property
    def dim(self) -> int:
        return dim_Ms(self.s)


def sturm_slots(params: SpaceParams) -> int:
    """Verification depth in slots for weight s + r/2 at level 576.

    Over-estimates by using the index [SL2(Z):Gamma0(576)] = 1152: the Sturm
    bound in q-exponents is (weight/12)*1152, converted to slot indices of
    exponents 24n + r.  Always at least dim M_s.
    """
    bound = (96 * params.s + 47 * params.r) // 24 + 1
    return max(bound, dim_Ms(params.s))


def miller_basis(s: int, prec: int, modulus=None):
    """Integral echelon (Victor Miller) basis of M_s(SL(2,Z)).

    Returns (forms, monomial_exponents): forms[i] = q^i + O(q^d) where
    d = dim M_s; monomial_exponents[i] = (a, b, c) with the i-th seed monomial
    E4^a * E6^b * Delta^c.
    """
    d = dim_Ms(s)
    if d == 0:
        return [], []
    if prec < d:
        raise InsufficientPrecision(f"need at least {d} coefficients")
    # Minimal-weight monomial for the residue of s mod 12 (unit leading coeff).
    heads = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 2: (2, 1)}
    ha, hb = heads[s % 12]
    e4 = eisenstein(4, prec, modulus)
    e6 = eisenstein(6, prec, modulus)
    dl = delta(prec, modulus)
    head = (e4 ** ha) * (e6 ** hb)
    e4cube = e4 ** 3
    monos = []
    expos = []
    for j in range(d):
        f = head * (dl ** j) * (e4cube ** (d - 1 - j))
        expos.append((ha + 3 * (d - 1 - j), hb, j))
        monos.append(f)
    # monos[j] has leading term q^j with coefficient 1; clear entries above
    # the diagonal to reach echelon form (all operations stay integral).
    basis = list(monos)
    for i in range(d - 1, -1, -1):
        f = basis[i]
        dense = f._dense()
        for k in range(i + 1, d):
            c = dense[k]
            if c:
                f = f - basis[k].scale(c)
                dense = f._dense()
        basis[i] = f
    return basis, expos


@dataclass(frozen=True)
class SrsBasis:
    """Triangular integral basis of the invariant subspace for (r, s).

    forms[i] is a SlotSeries with leading slot i and leading coefficient 1.
    descriptors[i] records either the echelon pivot or the (a, b, c) exponents
    of the seed monomial E4^a E6^b Delta^c, depending on the mode.
    """

    params: SpaceParams
    mode: str
    forms: tuple
    descriptors: tuple

    @property
    def t(self):
        return len(self.forms)

    @property
    def r(self):
        return self.params.r

    @property
    def modulus(self):
        return self.forms[0].modulus if self.forms else None

    @property
    def prec(self):
        return min(f.prec for f in self.forms) if self.forms else 0

    def descriptor_dict(self):
        return {
            "r": self.params.r,
            "s": self.params.s,
            "t": self.t,
            "mode": self.mode,
            "descriptors": [list(d) if isinstance(d, tuple) else d
                            for d in self.descriptors],
        }


def srs_basis(params: SpaceParams, prec: int, mode: str = "echelon",
              modulus=None) -> SrsBasis:
    """Basis of {eta(24t)^r f(24t)} in slot representation.

    mode "echelon": forms have slot expansion q_slot^i + O(q_slot^t).
    mode "paper-monomial": emits the raw monomial family
    E4^a E6^b Delta^c (s == 0 mod 12 only), which is triangular but not
    echelon; this reproduces published matrices bit-exactly.
    """
    t = dim_Ms(params.s)
    if prec < t:
        raise InsufficientPrecision(f"need prec >= {t}, got {prec}")
    er = eta_power(params.r, prec, modulus)
    if mode == "echelon":
        ms, _ = miller_basis(params.s, prec, modulus)
        forms = [SlotSeries(params.r, (er * f).dense0()) for f in ms]
        descriptors = tuple(range(t))
    elif mode == "paper-monomial":
        if params.s % 12 != 0:
            raise ValueError("paper-monomial mode needs s == 0 mod 12")
        e4 = eisenstein(4, prec, modulus)
        dl = delta(prec, modulus)
        e4cube = e4 ** 3
        forms = []
        descriptors = []
        for j in range(t):
            f = (dl ** j) * (e4cube ** (t - 1 - j))
            forms.append(SlotSeries(params.r, (er * f).dense0()))
            descriptors.append((3 * (t - 1 - j), 0, j))
        descriptors = tuple(descriptors)
    else:
        raise ValueError(f"unknown basis mode {mode!r}")
    return SrsBasis(params=params, mode=mode, forms=tuple(forms),
                    descriptors=tuple(descriptors))


def eta_quotient_form(params: SpaceParams, monomial, prec: int,
                      modulus=None) -> SlotSeries:
    """eta(24t)^r * (E4^a E6^b Delta^c)(24t) as a SlotSeries."""
    a, b, c = monomial
    er = eta_power(params.r, prec, modulus)
    f = Series.one(prec, modulus)
    if a:
        f = f * (eisenstein(4, prec, modulus) ** a)
    if b:
        f = f * (eisenstein(6, prec, modulus) ** b)
    if c:
        f = f * (delta(prec, modulus) ** c)
    return SlotSeries(params.r, (er * f).dense0())
