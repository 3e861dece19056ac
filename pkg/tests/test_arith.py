import pytest
from hypothesis import given, strategies as st
from sympy import jacobi_symbol, isprime

from partcert.arith import (
    Modulus,
    Residue,
    inverse_mod,
    kronecker,
    multiplicative_order,
    pow_mod,
)
from partcert.errors import CapExceeded, NotAUnit


class TestKronecker:
    @given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
    def test_matches_jacobi_for_odd_n(self, a, n):
        n = 2 * n + 1
        assert kronecker(a, n) == jacobi_symbol(a, n)

    def test_legendre_values(self):
        # squares mod 7: 1, 2, 4
        assert [kronecker(a, 7) for a in range(1, 7)] == [1, 1, -1, 1, -1, -1]

    def test_zero_on_common_factor(self):
        assert kronecker(15, 25) == 0
        assert kronecker(0, 9) == 0

    def test_character_multiplicative(self):
        for a in range(1, 30):
            for b in range(1, 30):
                assert kronecker(a * b, 23) == kronecker(a, 23) * kronecker(b, 23)


class TestInverse:
    @given(st.integers(1, 10**6), st.integers(2, 10**6))
    def test_inverse_mod(self, a, m):
        from math import gcd
        if gcd(a, m) == 1:
            assert a * inverse_mod(a, m) % m == 1
        else:
            with pytest.raises(NotAUnit):
                inverse_mod(a, m)

    def test_beta_for_169(self):
        assert inverse_mod(24, 169) == 162

    def test_pow_mod_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            pow_mod(24, -1, 169)


class TestOrder:
    def test_orders_mod_13(self):
        assert multiplicative_order(1, 13) == 1
        assert multiplicative_order(12, 13) == 2
        assert multiplicative_order(2, 13) == 12

    def test_cap(self):
        with pytest.raises(CapExceeded):
            multiplicative_order(2, 10**9 + 7, cap=10)

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            multiplicative_order(13, 169)


class TestModulus:
    def test_prime_power(self):
        mod = Modulus.prime_power(13, 2)
        assert mod.value == 169 and mod.prime == 13 and mod.exponent == 2

    def test_rejects_wrong_hint(self):
        with pytest.raises(ValueError):
            Modulus(12, 3, 2)


class TestResidue:
    def test_arithmetic(self):
        m = Modulus.prime_power(13, 1)
        x = Residue(10, m)
        y = Residue(5, m)
        assert (x + y).value == 2
        assert (x * y).value == 11
        assert (x - y).value == 5
        assert (x ** 9).value == pow(10, 9, 13)
        assert (y.inverse() * y).value == 1

    @given(st.integers(0, 168), st.integers(0, 168))
    def test_ring_laws_mod_169(self, a, b):
        m = Modulus.prime_power(13, 2)
        x, y = Residue(a, m), Residue(b, m)
        assert (x + y).value == (a + b) % 169
        assert (x * y).value == (a * b) % 169
