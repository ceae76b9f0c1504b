"""
Tests for single-prime queries: t_k, identify_quadratic, det comparison and
the triviality certificate.
"""
import pytest

from galois_blackbox.analysis import certify_trivial_mod, det_character_equal, frobenius_test, identify_quadratic
from galois_blackbox.arithmetic.base_field import BaseField, parse_prime, rational_prime, splitting_symbol
from galois_blackbox.exceptions import PrecisionInsufficient, UnknownPrime, ValuationTooLow
from galois_blackbox.oracle.truncated import TruncatedOracle
from galois_blackbox.primesets import find_T1
from tests.fixtures.blackbox import curve_43808_oracle, load_sets, q_bad_set, q_special_t2, rational_table, table_oracle

QI = BaseField.GAUSSIAN_RATIONALS


class TestFrobeniusTest:
    """t_k(p) = F_p(1)/2^k mod 2."""

    def test_elliptic_curve(self):
        oracle = curve_43808_oracle()
        # F_17(1) = 1 + 2 + 17 = 20
        assert frobenius_test(oracle, rational_prime(17), 1) == 0
        assert frobenius_test(oracle, rational_prime(17), 2) == 1
        print("✅ t_1(17) = 0, t_2(17) = 1")

    def test_bianchi_rows(self):
        """t_1 vanishes on the 3140c T2 set; t_2 is 1 on the last three primes."""
        sets = load_sets("3140c_sets.json")
        oracle = table_oracle("3140c.tsv", sets)
        t1_row = [frobenius_test(oracle, p, 1) for p in sets.t2_special.primes]
        t2_row = [frobenius_test(oracle, p, 2) for p in sets.t2_special.primes]
        assert t1_row == [0] * 10
        assert t2_row == [0, 0, 0, 0, 0, 0, 0, 1, 1, 1]

    def test_valuation_too_low(self):
        sets = load_sets("3140c_sets.json")
        oracle = table_oracle("3140c.tsv", sets)
        # F(1) = 1 + 2 + 41 = 44 has valuation 2
        with pytest.raises(ValuationTooLow):
            frobenius_test(oracle, parse_prime(QI, "5+4*i"), 3)

    def test_precision_reported(self):
        oracle = TruncatedOracle(curve_43808_oracle(), 2)
        with pytest.raises(PrecisionInsufficient) as exc:
            frobenius_test(oracle, rational_prime(17), 2)
        err = exc.value
        assert (err.quantity, err.needed_bits, err.available_bits) == ("F_p(1)", 3, 2)
        assert err.prime == "17"

    def test_exact_zero_is_infinite_valuation(self):
        oracle = rational_table({3: 4})  # F_3(1) = 0
        assert frobenius_test(oracle, rational_prime(3), 10) == 0


class TestIdentifyQuadratic:

    def setup_method(self):
        self.t1 = find_T1(BaseField.RATIONALS, q_bad_set())

    def test_dual_basis_elements(self):
        assert str(identify_quadratic([1, 0, 0], self.t1)) == "74"
        assert str(identify_quadratic([1, 1, 0], self.t1)) == "2"
        assert identify_quadratic([0, 0, 0], self.t1).is_trivial()

    def test_mapping_form(self):
        symbols = {rational_prime(3): 0, rational_prime(5): 1, rational_prime(7): 0}
        assert str(identify_quadratic(symbols, self.t1)) == "37"

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            identify_quadratic([1, 0], self.t1)

    def test_symbols_reproduced(self):
        """The identified class has the requested symbols at T1."""
        for bits in ([0, 1, 1], [1, 0, 1], [1, 1, 1]):
            delta = identify_quadratic(bits, self.t1)
            got = [splitting_symbol(delta, p) for p in self.t1.primes]
            assert got == bits


class TestDetCharacter:

    def setup_method(self):
        self.t1 = find_T1(BaseField.RATIONALS, q_bad_set())
        self.cyclotomic = {p: p.norm for p in self.t1.primes}

    def test_exact_match(self):
        assert det_character_equal(curve_43808_oracle(), self.cyclotomic, self.t1)
        assert not det_character_equal(curve_43808_oracle(), {p: 1 for p in self.t1.primes}, self.t1)

    def test_modular_match(self):
        oracle = TruncatedOracle(curve_43808_oracle(), 2)
        assert det_character_equal(oracle, self.cyclotomic, self.t1, bits=2)
        with pytest.raises(PrecisionInsufficient):
            det_character_equal(oracle, self.cyclotomic, self.t1)

    def test_missing_primes(self):
        with pytest.raises(UnknownPrime) as exc:
            det_character_equal(rational_table({3: 0}), self.cyclotomic, self.t1)
        assert exc.value.primes == ["5", "7"]


class TestCertifyTrivial:

    def test_curve_is_trivial_mod_two_only(self):
        t2 = q_special_t2()
        oracle = curve_43808_oracle()
        assert certify_trivial_mod(oracle, 1, t2.as_t1(), t2)
        assert not certify_trivial_mod(oracle, 2, t2.as_t1(), t2)
        print("✅ 43808: trivial mod 2, not mod 4")

    def test_det_checked_before_precision(self):
        """det = 7 is not 1 mod 4, so the missing F_p(1) bits are never needed."""
        t2 = q_special_t2()
        oracle = TruncatedOracle(curve_43808_oracle(), 3)
        assert not certify_trivial_mod(oracle, 2, t2.as_t1(), t2)
