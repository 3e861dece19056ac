import random

import pytest

from partcert.errors import CapExceeded, InsufficientPrecision, SpanViolation
from partcert.hecke import (
    BlockMatrix,
    block_companion,
    block_x,
    eigen_split,
    eigenvalue,
    mat_eye,
    mat_mul,
    matrix_of_t,
    order_in_gl,
    order_in_pgl,
    recursion_matrices,
    recursion_scalars,
    required_precision,
    t_ell2,
    verify_recursion,
)
from partcert.modforms import (
    SpaceParams,
    dim_Ms,
    eisenstein,
    delta,
    eta_power,
    srs_basis,
    sturm_slots,
)
from partcert.qseries import Series, SlotSeries, slot_delta


def _basis(r, s, ell, depth, modulus=None, mode="echelon"):
    params = SpaceParams(r=r, s=s)
    t = dim_Ms(s)
    prec = required_precision(params, ell, t, depth)
    return srs_basis(params, prec, mode=mode, modulus=modulus), params


class TestEigenvalue:
    def test_eta11_mod13_at_5(self):
        b, params = _basis(11, 0, 5, 4, modulus=13)
        assert eigenvalue(b.forms[0], params, 5, check_slots=3) % 13 == 10

    def test_six_eigenform_identities_exact(self):
        # the six one-dimensional weights s with dim M_s = 1
        heads = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0),
                 10: (1, 1), 14: (2, 1)}
        check = 2
        for ell in (5, 7, 11, 13):
            L = ell * ell
            prec = L * (check + 1) + slot_delta(23, ell) + 1
            e4 = eisenstein(4, prec)
            e6 = eisenstein(6, prec)
            for s, (a, b) in heads.items():
                f_level1 = (e4 ** a) * (e6 ** b)
                for r in range(1, 24, 2):
                    params = SpaceParams(r=r, s=s)
                    if params.lam < 1:
                        # weight 1/2: the middle Hecke term is not integral
                        continue
                    er = eta_power(r, prec)
                    form = SlotSeries(r, (er * f_level1).dense0())
                    image = t_ell2(form, params, ell,
                                   (prec - 1 - slot_delta(r, ell)) // L + 1)
                    a_ell = image.coef(0)
                    for n in range(image.prec):
                        assert image.coef(n) == a_ell * form.coef(n)


class TestMatrixOfT:
    def test_known_37_matrix_is_extracted(self):
        b, params = _basis(11, 12, 5, 8, modulus=37)
        A = matrix_of_t(b, 5, residual_depth=8)
        assert len(A.mat) == 2
        # trace and determinant match the eigenvalue pair {1, 32} mod 37
        tr = (A.mat[0][0] + A.mat[1][1]) % 37
        det = (A.mat[0][0] * A.mat[1][1] - A.mat[0][1] * A.mat[1][0]) % 37
        assert tr == (1 + 32) % 37
        assert det == (1 * 32) % 37

    def test_insufficient_precision(self):
        params = SpaceParams(r=11, s=0)
        b = srs_basis(params, 30, modulus=13)
        with pytest.raises(InsufficientPrecision):
            matrix_of_t(b, 5, residual_depth=10)

    def test_invariance_random_sample_exact(self):
        rng = random.Random(7)
        for _ in range(10):
            r = rng.choice(range(1, 24, 2))
            s = rng.choice(range(0, 42, 2))
            if dim_Ms(s) == 0:
                continue
            ell = rng.choice([5, 7, 11, 13])
            params = SpaceParams(r=r, s=s)
            t = dim_Ms(s)
            depth = min(max(sturm_slots(params) - t, 1), 12)
            prec = required_precision(params, ell, t, depth)
            basis = srs_basis(params, prec)
            # SpanViolation here would falsify the invariant-subspace property
            A = matrix_of_t(basis, ell, residual_depth=depth)
            assert len(A.mat) == t

    def test_commutativity(self):
        for modulus in (None, 37):
            params = SpaceParams(r=3, s=24)
            t = dim_Ms(24)
            prec = required_precision(params, 13, t, 5)
            basis = srs_basis(params, prec, modulus=modulus)
            mats = {}
            for ell in (5, 7, 11, 13):
                mats[ell] = matrix_of_t(basis, ell, residual_depth=5).mat
            for l1 in (5, 7, 11, 13):
                for l2 in (5, 7, 11, 13):
                    assert (mat_mul(mats[l1], mats[l2], modulus)
                            == mat_mul(mats[l2], mats[l1], modulus))


class TestRecursion:
    def test_scalars(self):
        params = SpaceParams(r=11, s=0)
        b1, c1 = recursion_scalars(params, 5)
        # b1 = -ell^(s+(r-3)/2) ((-1)^((r-1)/2) 12 / ell), c1 = -ell^(r+2s-2)
        assert c1 == -(5 ** 9)
        assert abs(b1) == 5 ** 4

    def test_two_term_recurrence(self):
        b, params = _basis(11, 0, 5, 4, modulus=13)
        A = matrix_of_t(b, 5, residual_depth=4)
        _, c1 = recursion_scalars(params, 5)
        prev = {}
        for k in (1, 2, 3):
            prev[k] = recursion_matrices(A, k)[0]
        for k in range(2, 50):
            a_k1 = recursion_matrices(A, k + 1)[0]
            a_k = recursion_matrices(A, k)[0]
            a_km1 = recursion_matrices(A, k - 1)[0]
            lhs = a_k1
            rhs = mat_mul(a_k, A.mat, 13)
            rhs = tuple(tuple((rhs[i][j] + c1 * a_km1[i][j]) % 13
                              for j in range(1)) for i in range(1))
            assert lhs == rhs

    def test_verify_recursion_three_spaces(self):
        for (r, s, ell) in ((11, 0, 5), (23, 0, 7), (11, 12, 5)):
            params = SpaceParams(r=r, s=s)
            t = dim_Ms(s)
            # k=2 needs slots surviving two U passes
            prec = (ell * ell) ** 2 * 8
            basis = srs_basis(params, prec, modulus=13 if s == 0 else 37)
            rep = verify_recursion(basis, ell, 2, 4)
            assert rep["equal"], rep

    def test_a_uk_minus_1_vanishes_m13(self):
        b, params = _basis(11, 0, 5, 4, modulus=13)
        A = matrix_of_t(b, 5, residual_depth=4)
        K = order_in_pgl(block_x(A))
        assert K == 14
        for u in (1, 2):
            a_k = recursion_matrices(A, u * K - 1)[0]
            assert all(x % 13 == 0 for row in a_k for x in row)

    def test_a_uk_minus_1_vanishes_m37(self):
        b, params = _basis(11, 12, 5, 8, modulus=37)
        A = matrix_of_t(b, 5, residual_depth=8)
        K = order_in_pgl(block_x(A))
        assert K == 456
        for u in (1, 2):
            a_k = recursion_matrices(A, u * K - 1)[0]
            assert all(x % 37 == 0 for row in a_k for x in row)


class TestOrders:
    def test_identity_has_order_one(self):
        X = BlockMatrix(mat=mat_eye(2), e=9, ell=5, modulus=13)
        assert order_in_pgl(X) == 1
        assert order_in_gl(X) == 1

    def test_known_orders_13_5(self):
        b, _ = _basis(11, 0, 5, 4, modulus=13)
        A = matrix_of_t(b, 5, residual_depth=4)
        X = block_x(A)
        K = order_in_pgl(X)
        M = order_in_gl(X)
        assert K == 14 and M == 56 and M % K == 0

    def test_pgl_divides_gl_random(self):
        rng = random.Random(3)
        for _ in range(20):
            a = rng.randrange(13)
            X = block_companion(((a,),), 5, 9, 13)
            K, M = order_in_pgl(X), order_in_gl(X)
            assert M % K == 0

    def test_cap_exceeded_carries_partial(self):
        b, _ = _basis(11, 0, 5, 4, modulus=13)
        A = matrix_of_t(b, 5, residual_depth=4)
        X = block_x(A)
        with pytest.raises(CapExceeded) as exc:
            order_in_pgl(X, cap=3)
        assert exc.value.cap == 3


class TestEigenSplit:
    def test_m37_ell5_split(self):
        b, _ = _basis(11, 12, 5, 8, modulus=37)
        A = matrix_of_t(b, 5, residual_depth=8)
        es = eigen_split(A)
        assert es.split
        assert sorted(comp[2] for comp in es.components) == [12, 38]
        assert es.lcm == 228

    def test_scalar_case(self):
        b, _ = _basis(11, 0, 5, 4, modulus=13)
        A = matrix_of_t(b, 5, residual_depth=4)
        es = eigen_split(A)
        assert es.lcm == 14
