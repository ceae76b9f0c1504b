"""
Tests for 2-adic answers and their precision bookkeeping.
"""
import pytest

from galois_blackbox.arithmetic.base_field import rational_prime
from galois_blackbox.exceptions import ParseError, RamifiedAnswer
from galois_blackbox.oracle.answers import INFINITE_VALUATION, FrobeniusAnswer, TwoAdicInt, f_at_one


class TestTwoAdicInt:

    def test_modulo_reduces_value(self):
        x = TwoAdicInt.modulo(14, 3)
        assert x.value == 6
        assert not x.is_exact
        assert x.known_to(3)
        assert not x.known_to(4)

    def test_exact_known_everywhere(self):
        x = TwoAdicInt.exact(-2)
        assert x.is_exact
        assert x.known_to(1000)
        assert x.residue(3) == 6

    def test_arithmetic_keeps_lesser_precision(self):
        a = TwoAdicInt.modulo(5, 4)
        b = TwoAdicInt.modulo(3, 2)
        assert (a + b).bits == 2
        assert (a + TwoAdicInt.exact(1)).bits == 4
        assert (1 - a).value == (1 - 5) % 16

    def test_valuation(self):
        assert TwoAdicInt.exact(44).valuation() == 2
        assert TwoAdicInt.exact(0).valuation() == INFINITE_VALUATION
        # zero mod 2^3 only tells us the valuation is at least 3
        assert TwoAdicInt.modulo(8, 3).valuation() >= 3

    def test_truncation(self):
        x = TwoAdicInt.exact(53).truncated(3)
        assert x == TwoAdicInt.modulo(5, 3)
        print(f"✅ 53 truncated to 3 bits: {x}")


class TestFrobeniusAnswer:

    def setup_method(self):
        self.p = rational_prime(17)

    def test_f_at_one(self):
        answer = FrobeniusAnswer.frobenius(self.p, TwoAdicInt.exact(-2), TwoAdicInt.exact(17))
        assert f_at_one(answer) == TwoAdicInt.exact(20)
        assert answer.is_exact

    def test_even_det_rejected(self):
        with pytest.raises(ParseError):
            FrobeniusAnswer.frobenius(self.p, TwoAdicInt.exact(0), TwoAdicInt.exact(4))

    def test_ramified_has_no_coefficients(self):
        answer = FrobeniusAnswer.ramified_at(rational_prime(2))
        assert answer.ramified
        with pytest.raises(RamifiedAnswer):
            answer.coefficients()
