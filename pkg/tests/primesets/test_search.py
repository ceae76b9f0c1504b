"""
Tests for the T0 / T1 / T2 prime searches.
"""
import pytest

from galois_blackbox.arithmetic.base_field import BaseField, parse_bad_set, selmer_group
from galois_blackbox.arithmetic.f2_linalg import BitVector
from galois_blackbox.exceptions import SearchExhausted
from galois_blackbox.primesets import find_T0, find_T1, find_T2, find_T2_special
from galois_blackbox.primesets.search import reindex_special, special_set_for, unramified_basis
from galois_blackbox.primesets.verify import SetKind, verify_set
from tests.fixtures.blackbox import ex48_family, load_sets, q_bad_set, q_basis, q_special_t2

Q = BaseField.RATIONALS
QI = BaseField.GAUSSIAN_RATIONALS


def names(primes):
    return [str(p) for p in primes]


class TestFindT1:
    """Linearly independent sets and their dual bases."""

    def test_rationals_two_thirty_seven(self):
        t1 = find_T1(Q, q_bad_set())
        assert names(t1.primes) == ["3", "5", "7"]
        assert t1.basis.describe() == ["-1", "2", "37"]
        assert t1.dual_basis.describe() == ["74", "37", "-74"]
        print(f"✅ T1 = {names(t1.primes)}, dual = {t1.dual_basis.describe()}")

    def test_dual_basis_is_dual(self):
        t1 = find_T1(Q, q_bad_set())
        for i, p in enumerate(t1.primes):
            assert t1.dual_basis.symbol_row(p) == BitVector.unit(i, 3)

    def test_empty_bad_set_has_rank_zero(self):
        t1 = find_T1(Q, [])
        assert t1.primes == ()
        assert t1.basis.rank == 0

    def test_full_group_for_empty_bad_set(self):
        """-1 ramifies at 2, so the full K(S,2) needs one prime."""
        t1 = find_T1(Q, [], basis=selmer_group(Q, []))
        assert names(t1.primes) == ["3"]

    def test_norm_cap_exhausted(self):
        with pytest.raises(SearchExhausted) as exc:
            find_T1(Q, q_bad_set(), norm_cap=5)
        assert exc.value.norm_cap == 5
        assert exc.value.exit_code == 2


class TestFindT0:

    def test_example_family(self):
        t0 = find_T0(Q, q_bad_set(), ex48_family())
        assert names(t0.primes) == ["3", "5"]
        assert [str(s) for s in t0.signatures] == ["11", "10", "01"]
        print(f"✅ T0 = {names(t0.primes)} with signatures {[str(s) for s in t0.signatures]}")

    def test_verifies(self):
        family = ex48_family()
        t0 = find_T0(Q, q_bad_set(), family)
        result = verify_set(SetKind.T0, t0.primes, q_basis(), family=family)
        assert result.ok
        assert result.signatures == list(t0.signatures)


class TestFindT2:

    def test_generic(self):
        t2 = find_T2(Q, q_bad_set())
        assert names(t2.primes) == ["3", "5", "7", "17", "19", "23"]
        assert not t2.is_special
        assert verify_set(SetKind.T2, t2.primes, t2.basis)

    def test_special(self):
        t2 = find_T2_special(Q, q_bad_set())
        assert names(t2.primes) == ["7", "53", "17", "3", "23", "5"]
        assert names([t2.singleton(2), t2.pair(1, 3), t2.pair(3, 2)]) == ["53", "23", "5"]
        assert verify_set(SetKind.T2_SPECIAL, t2.primes, t2.basis, indexing=t2.indexing)
        print(f"✅ special T2 = {names(t2.primes)}")

    def test_special_over_gaussians(self):
        bad = parse_bad_set(QI, "1+i, 1+2*i, 11+6*i")
        t2 = find_T2_special(QI, bad)
        assert t2.rank == 4
        assert len(t2.primes) == 10
        assert verify_set(SetKind.T2_SPECIAL, t2.primes, t2.basis, indexing=t2.indexing)

    def test_as_t1_uses_singletons(self):
        t1 = q_special_t2().as_t1()
        assert names(t1.primes) == ["7", "53", "17"]
        assert t1.dual_basis == t1.basis

    def test_rank_zero(self):
        assert find_T2(Q, []).primes == ()
        assert find_T2_special(Q, []).primes == ()

    def assert_rows_additive(self, t2):
        r = t2.rank
        row = t2.basis.symbol_row
        for i in range(1, r + 1):
            assert row(t2.singleton(i)) == BitVector.unit(i - 1, r)
            for j in range(i + 1, r + 1):
                assert row(t2.pair(i, j)) == row(t2.singleton(i)) + row(t2.singleton(j)), (i, j)

    def test_pair_rows_add_over_rationals(self):
        self.assert_rows_additive(q_special_t2())
        self.assert_rows_additive(find_T2_special(Q, q_bad_set()))

    def test_pair_rows_add_over_gaussians(self):
        t2 = load_sets("3140c_sets.json").t2_special
        assert t2.rank == 4
        self.assert_rows_additive(t2)
        self.assert_rows_additive(find_T2_special(QI, parse_bad_set(QI, "1+i, 1+2*i, 11+6*i")))
        print("✅ p_ij rows are sums of p_i and p_j rows over Q(i)")

    @pytest.mark.parametrize("leading", ["110", "011", "111", "001"])
    def test_pair_rows_add_after_rotation(self, leading):
        t2 = q_special_t2()
        rotated, _ = t2.basis.with_leading(BitVector.parse(leading))
        fresh = special_set_for(t2, rotated)
        assert fresh.basis == rotated
        self.assert_rows_additive(fresh)


class TestRotation:
    """Special sets under a rotated basis."""

    def test_same_basis_reindexes(self):
        t2 = q_special_t2()
        again = reindex_special(t2, t2.basis)
        assert again is not None
        assert set(again.primes) == set(t2.primes)

    def test_rotated_basis_still_special(self):
        t2 = q_special_t2()
        rotated, _ = t2.basis.with_leading(t2.basis.coordinates(-74))
        fresh = special_set_for(t2, rotated)
        assert fresh.basis == rotated
        assert verify_set(SetKind.T2_SPECIAL, fresh.primes, rotated, indexing=fresh.indexing)

    def test_unramified_basis_default(self):
        assert unramified_basis(Q, q_bad_set()).describe() == ["-1", "2", "37"]
