from fractions import Fraction
from math import factorial

import pytest

from eulerian_audit.classical_seq import (
    NamedNumberKind,
    bernoulli_by_recurrence,
    bernstein_poly,
    euler_by_recurrence,
    euler_zeta_neg,
    eulerian_fraction,
    eulerian_number,
    eulerian_poly,
    eulerian_poly_G,
    eulerian_poly_S,
    eulerian_row_by_descents,
    eulerian_series_partial,
    eulerian_triangle_row,
    genocchi_by_bernoulli,
    named_number,
    polylog_neg,
    polylog_neg_derivative,
    polylog_partial,
    stirling2,
    stirling2_explicit,
)
from eulerian_audit.exact_arith import Poly, RatFunc
from eulerian_audit.power_series import gf_coefficients

X = Poly.variable("x")


class TestEulerianNumbers:
    def test_examples(self):
        assert eulerian_number(3, 2) == 4
        assert eulerian_number(5, 0) == 1
        assert eulerian_number(2, 2) == 1
        assert eulerian_number(3, 4) == 0

    @pytest.mark.parametrize("n", range(0, 8))
    def test_matches_descent_counting(self, n):
        row = eulerian_triangle_row(n)
        assert [int(v) for v in row.entries] == eulerian_row_by_descents(n)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_row_sums_are_factorials(self, n):
        assert sum(eulerian_number(n, k) for k in range(1, n + 1)) == factorial(n)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_rows_are_palindromic(self, n):
        inner = eulerian_triangle_row(n).entries[1:]
        assert inner == inner[::-1]
        assert all(v >= 0 for v in inner)


class TestEulerianPolynomials:
    def test_summation_convention(self):
        assert eulerian_poly_S(0) == Poly.constant(1)
        assert eulerian_poly_S(2) == X + X * X
        assert eulerian_poly_S(3) == X + 4 * X ** 2 + X ** 3

    def test_generating_function_convention(self):
        assert eulerian_poly_G(0) == Poly.constant(1)
        assert eulerian_poly_G(1) == Poly.constant(-1)
        assert eulerian_poly_G(2) == 1 + X

    @pytest.mark.parametrize("n", range(0, 13))
    def test_recurrence_matches_series_oracle(self, n):
        oracle = gf_coefficients("classical_eulerian", 12)[n]
        assert RatFunc(eulerian_poly_G(n)) == oracle

    @pytest.mark.parametrize("n", range(1, 13))
    def test_convention_bridge(self, n):
        assert X * eulerian_poly_G(n) == eulerian_poly_S(n) * (-1) ** n

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            eulerian_poly(2, "Q")

    def test_fraction_examples(self):
        assert eulerian_fraction(0, "S") == RatFunc(Poly.constant(1), 1 - X)
        assert eulerian_fraction(1, "S") == RatFunc(X, (1 - X) ** 2)
        assert eulerian_fraction(2, "S") == RatFunc(X + X * X, (1 - X) ** 3)

    @pytest.mark.parametrize("n", range(0, 5))
    def test_fraction_brackets_partial_sums(self, n):
        x = Fraction(1, 3)
        value, tail = eulerian_series_partial(n, x, 60)
        exact = eulerian_fraction(n, "S").eval(x)
        assert value <= exact <= value + tail


class TestNamedNumbers:
    def test_examples(self):
        assert named_number("euler", 3) == Fraction(1, 4)
        assert named_number(NamedNumberKind.STIRLING2, 3, 2) == 3
        assert named_number("genocchi", 0) == 0
        assert named_number("bernoulli", 2) == Fraction(1, 6)

    def test_k_only_for_stirling(self):
        with pytest.raises(ValueError):
            named_number("euler", 3, 1)
        with pytest.raises(ValueError):
            named_number("stirling2", 3)

    @pytest.mark.parametrize("n", range(0, 16))
    def test_bernoulli_routes_agree(self, n):
        assert named_number("bernoulli", n) == bernoulli_by_recurrence(n)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_euler_routes_agree(self, n):
        assert named_number("euler", n) == euler_by_recurrence(n)

    def test_euler_even_indices_vanish(self):
        assert all(named_number("euler", n) == 0 for n in range(2, 13, 2))

    @pytest.mark.parametrize("n", range(0, 13))
    def test_genocchi_routes_agree(self, n):
        assert named_number("genocchi", n) == genocchi_by_bernoulli(n)

    def test_genocchi_values(self):
        expected = [0, 1, -1, 0, 1, 0, -3, 0, 17, 0, -155, 0, 2073]
        assert [named_number("genocchi", n) for n in range(13)] == expected

    @pytest.mark.parametrize("n", range(0, 11))
    def test_stirling_routes_agree(self, n):
        for k in range(n + 1):
            assert stirling2(n, k) == stirling2_explicit(n, k)


class TestBernstein:
    def test_examples(self):
        assert bernstein_poly(0, 1) == 1 - X
        assert bernstein_poly(1, 2) == 2 * X - 2 * X * X
        assert bernstein_poly(0, 0) == Poly.constant(1)

    def test_k_above_n_rejected(self):
        with pytest.raises(ValueError):
            bernstein_poly(3, 2)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_partition_of_unity(self, n):
        total = Poly(())
        for k in range(n + 1):
            total = total + bernstein_poly(k, n)
        assert total == Poly.constant(1)


class TestPolylog:
    def test_examples(self):
        assert polylog_neg(0) == RatFunc(X, 1 - X)
        assert polylog_neg(1) == RatFunc(X, (1 - X) ** 2)
        assert polylog_neg(2) == RatFunc(X * (1 + X), (1 - X) ** 3)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_denominator_and_numerator_degree(self, n):
        value = polylog_neg(n)
        assert value.den == (X - 1) ** (n + 1)
        assert value.num.degree == (1 if n == 0 else n)

    @pytest.mark.parametrize("n", range(0, 8))
    def test_stirling_form_matches_derivative_form(self, n):
        assert polylog_neg(n) == polylog_neg_derivative(n)

    def test_partial_sums(self):
        value, tail = polylog_partial(0, Fraction(1, 2), 10)
        assert value <= 1 <= value + tail
        value, tail = polylog_partial(-1, Fraction(1, 2), 30)
        assert value <= 2 <= value + tail
        value, tail = polylog_partial(-2, Fraction(1, 3), 40)
        exact = polylog_neg(2).eval(Fraction(1, 3))
        assert value <= exact <= value + tail
        assert polylog_partial(3, 0, 5) == (0, 0)

    @pytest.mark.parametrize("n,terms", [(1, 1), (1, 3), (2, 1), (3, 1), (1, 20), (4, 2)])
    def test_tail_bound_for_positive_order(self, n, terms):
        z = Fraction(1, 2)
        value, tail = polylog_partial(n, z, terms)
        reference, _ = polylog_partial(n, z, 200)
        assert reference - value <= tail

    def test_logarithm_first_term_tail(self):
        value, tail = polylog_partial(1, Fraction(1, 2), 1)
        assert value == Fraction(1, 2)
        assert tail == Fraction(1, 4)

    def test_partial_sum_needs_unit_disc(self):
        with pytest.raises(ValueError):
            polylog_partial(1, 1, 10)

    def test_euler_zeta_examples(self):
        assert euler_zeta_neg(1) == Fraction(-1, 2)
        assert euler_zeta_neg(2) == 0
        assert euler_zeta_neg(3) == Fraction(1, 4)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_euler_zeta_matches_euler_numbers(self, n):
        assert euler_zeta_neg(n) == named_number("euler", n)

    def test_zero_boundary_differs(self):
        assert euler_zeta_neg(0) == -1
        assert named_number("euler", 0) == 1
