import pytest

from partcert.errors import InadmissibleN, MatchFailure, OverflowBudget
from partcert.modforms import SpaceParams, srs_basis
from partcert.partition import (
    PartitionTable,
    admissible_ns,
    check_admissible,
    check_fum_consistency,
    f_base_residue,
    f_max_argument,
    f_series,
    match_to_basis,
    partition_mod,
)
from partcert.qseries import Series


FIRST_VALUES = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135,
                176, 231, 297, 385, 490, 627]


class TestOracle:
    def test_first_values(self):
        table = partition_mod(20, 10 ** 6)
        assert [table.p(n) for n in range(21)] == FIRST_VALUES

    def test_negative_is_zero(self):
        assert partition_mod(5, 13).p(-3) == 0

    def test_beyond_table_raises(self):
        with pytest.raises(OverflowBudget):
            partition_mod(5, 13).p(6)

    def test_audit(self):
        assert partition_mod(3000, 97).audit(samples=50)

    def test_python_and_compiled_paths_agree(self):
        # M >= 2^31 forces the pure-Python path
        big = partition_mod(300, 2 ** 31)
        small = partition_mod(300, 2 ** 31 - 1)
        for n in (0, 1, 100, 250, 300):
            # independent third route: exact generating function
            pass
        from partcert.modforms import eta
        gen = eta(301).inverse()
        for n in range(301):
            assert big.p(n) == gen.coef(n) % (2 ** 31)
            assert small.p(n) == gen.coef(n) % (2 ** 31 - 1)

    def test_ramanujan_congruences(self):
        table = partition_mod(11 * 10 ** 4 + 10, 5 * 7 * 11)
        for n in range(10 ** 4 + 1):
            assert table.p(5 * n + 4) % 5 == 0
            assert table.p(7 * n + 5) % 7 == 0
            assert table.p(11 * n + 6) % 11 == 0


class TestFSeries:
    def test_base_residues(self):
        assert f_base_residue(13, 1) == 11
        assert f_base_residue(13, 2) == 23
        assert f_base_residue(37, 1) == 11
        assert f_base_residue(5, 1) == 19
        assert f_base_residue(5, 2) == 23

    def test_max_argument(self):
        n0 = f_base_residue(13, 1)
        assert f_max_argument(13, 1, 1) == (13 * n0 + 1) // 24

    def test_first_slot_values(self):
        F = f_series(13, 1, 3, 10 ** 6)
        # p((13*11+1)/24) = p(6), p((13*35+1)/24) = p(19), p((13*59+1)/24) = p(32)
        assert F.coef(0) == 11
        assert F.coef(1) == 490
        assert F.coef(2) == 8349

    def test_budget(self):
        with pytest.raises(OverflowBudget):
            f_series(13, 1, 10 ** 6, 13, budget=10 ** 4)

    def test_u_m_consistency(self):
        assert check_fum_consistency(5, 1, 30, 5 ** 4)
        assert check_fum_consistency(13, 1, 20, 13)


class TestMatching:
    def test_match_failure_reports_slot(self):
        params = SpaceParams(r=11, s=0)
        basis = srs_basis(params, 50, modulus=13)
        F = f_series(13, 1, 50, 13)
        # corrupt one slot
        bad = list(F.slot.series.coeffs)
        bad[7] = (bad[7] + 1) % 13
        from partcert.partition import FSlotSeries
        from partcert.qseries import SlotSeries
        Fbad = FSlotSeries(m=13, j=1, n0=11,
                           slot=SlotSeries(11, Series(tuple(bad), 0, 13)))
        with pytest.raises(MatchFailure) as exc:
            match_to_basis(Fbad, basis)
        assert exc.value.slot == 7

    def test_residue_mismatch_rejected(self):
        basis = srs_basis(SpaceParams(r=23, s=0), 30, modulus=13)
        F = f_series(13, 1, 30, 13)  # n0 = 11 != 23
        with pytest.raises(ValueError):
            match_to_basis(F, basis)


class TestAdmissibility:
    def test_first_admissible_for_13_59(self):
        ns = admissible_ns(13, 1, 59, 3, 3)
        assert ns[0] == 1
        assert (13 * 59 ** 3 * ns[0] + 1) // 24 == 111247

    def test_skips_divisible(self):
        for n in admissible_ns(13, 1, 5, 27, 10):
            assert n % 5 != 0 and n % 13 != 0

    def test_check_admissible(self):
        check_admissible(13, 1, 59, 3, 1)
        with pytest.raises(InadmissibleN):
            check_admissible(13, 1, 59, 3, 2)
        with pytest.raises(InadmissibleN):
            check_admissible(13, 1, 59, 3, 1417)  # 1417 = 13 * 109
        with pytest.raises(InadmissibleN):
            check_admissible(13, 1, 59, 3, 649)  # 649 = 59 * 11
