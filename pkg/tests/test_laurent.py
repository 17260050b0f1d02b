import pytest
import sympy as sp

from dyck_cluster.errors import DivisibilityError, InvalidInputError
from dyck_cluster.laurent import (
    LaurentPoly, add, canonical_string, constant, denominator_exponents,
    exact_div, has_positive_numerator, monomial, mul, numerator, parse_laurent,
    sub, to_sympy, variable, zero,
)


def x(i, nvars):
    return variable(i, nvars)


class TestArithmetic:
    def test_terms_merge_and_cancel(self):
        p = LaurentPoly(1, (((1,), 1), ((1,), -1)))
        assert p.is_zero()
        assert p == zero(1)

    def test_equal_values_hash_equal(self):
        a = add(x(1, 2), x(2, 2))
        b = add(x(2, 2), x(1, 2))
        assert a == b
        assert len({a, b}) == 1

    def test_operators(self):
        x1, x2 = x(1, 2), x(2, 2)
        assert (x1 + x2) * (x1 - x2) == sub(mul(x1, x1), mul(x2, x2))
        assert -x1 + x1 == zero(2)
        assert x1 ** 3 == monomial((3, 0))

    def test_negative_power_of_monomial(self):
        assert x(1, 1) ** -2 == monomial((-2,))
        assert monomial((1,), -1) ** -1 == monomial((-1,), -1)

    def test_negative_power_of_sum_raises(self):
        with pytest.raises(DivisibilityError):
            (x(1, 1) + constant(1, 1)) ** -1

    def test_variable_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            add(x(1, 1), x(1, 2))

    def test_variable_range(self):
        with pytest.raises(InvalidInputError):
            variable(3, 2)


class TestExactDivision:
    def test_polynomial_divisor(self):
        x1 = x(1, 1)
        one = constant(1, 1)
        assert exact_div(x1 * x1 - one, x1 - one) == x1 + one

    def test_monomial_divisor(self):
        x1, x2 = x(1, 2), x(2, 2)
        q = exact_div(x2 + constant(1, 2), x1)
        assert q == LaurentPoly.from_dict(2, {(-1, 1): 1, (-1, 0): 1})

    def test_laurent_operands(self):
        x1, x2 = x(1, 2), x(2, 2)
        a = exact_div(x1 + x2, x1 * x2)
        b = exact_div(constant(1, 2) + x2, x1)
        assert exact_div(mul(a, b), b) == a

    def test_inexact_division_raises(self):
        with pytest.raises(DivisibilityError):
            exact_div(x(1, 2) + constant(1, 2), x(2, 2) + constant(1, 2))

    def test_division_by_zero_raises(self):
        with pytest.raises(DivisibilityError):
            exact_div(x(1, 1), zero(1))

    def test_agrees_with_sympy(self):
        x1, x2, x3 = x(1, 3), x(2, 3), x(3, 3)
        one = constant(1, 3)
        a = (x1 + x2 * x3) * (one + x3) * (x1 + one)
        b = (one + x3) * x2
        q = exact_div(a, b)
        assert sp.simplify(to_sympy(q) - to_sympy(a) / to_sympy(b)) == 0


class TestCanonicalString:
    def test_worked_example(self):
        value = LaurentPoly.from_dict(4, {
            (0, -1, -1, 1): 1,
            (0, 0, -1, 0): 1,
            (1, -1, 0, 1): 1,
        })
        assert canonical_string(value) == "(x4 + x2 + x1*x3*x4)/(x2*x3)"

    @pytest.mark.parametrize("value, text", [
        (zero(2), "0"),
        (constant(2, 2), "2"),
        (variable(1, 2), "x1"),
        (monomial((-1, 0)), "1/x1"),
        (monomial((-1, -1)), "1/(x1*x2)"),
        (monomial((2, 0), 3), "3*x1^2"),
        (LaurentPoly.from_dict(1, {(0,): -2, (1,): 1}), "-2 + x1"),
        (LaurentPoly.from_dict(2, {(1, 0): 1, (0, 1): -1}), "-x2 + x1"),
        (LaurentPoly.from_dict(2, {(-1, 0): 1, (-1, 1): 1}), "(1 + x2)/x1"),
        (LaurentPoly.from_dict(1, {(-1,): 2}), "2/x1"),
    ])
    def test_rendering(self, value, text):
        assert canonical_string(value) == text
        assert str(value) == text

    @pytest.mark.parametrize("text, nvars", [
        ("(x4 + x2 + x1*x3*x4)/(x2*x3)", 4),
        ("(1 + x2 + x1)/(x1*x2)", 2),
        ("-x2 + x1", 2),
        ("3*x1^2/x2^2", 2),
    ])
    def test_parse_round_trip(self, text, nvars):
        assert canonical_string(parse_laurent(text, nvars)) == text

    def test_parse_accepts_unsorted_input(self):
        assert parse_laurent("(1+x1+x2)/(x1*x2)", 2) == parse_laurent("(1 + x2 + x1)/(x1*x2)", 2)
        assert parse_laurent("x1**2 * x2**-1", 2) == monomial((2, -1))

    @pytest.mark.parametrize("text", [
        "x1/(1 + x2)",
        "y1 + x1",
        "x1/2",
        "x1 +",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(InvalidInputError):
            parse_laurent(text, 2)


class TestDenominators:
    def test_denominator_and_numerator(self):
        value = parse_laurent("(x4 + x2 + x1*x3*x4)/(x2*x3)", 4)
        assert denominator_exponents(value) == (0, 1, 1, 0)
        assert numerator(value) == parse_laurent("x4 + x2 + x1*x3*x4", 4)

    def test_positive_numerator(self):
        assert has_positive_numerator(parse_laurent("(1 + x1)/x2", 2))
        assert not has_positive_numerator(parse_laurent("(1 - x1)/x2", 2))
        assert not has_positive_numerator(zero(2))
