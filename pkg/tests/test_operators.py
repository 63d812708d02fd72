"""Functional calculus: derivative law, multiplication theorem, determinants."""
import random
from fractions import Fraction as Q

import pytest

from thetacalc.errors import (CandidateNotARoot, NotASolution, NotClassifiable,
                              TruncationTooSmall)
from thetacalc.exact import Polynomial, RationalFunction
from thetacalc.operators import (MultSpec, TruncatedOperator,
                                 check_multiplication_identity,
                                 classify_mult_operator, derivation_like,
                                 grevy_determinant, nsymb_solution_check,
                                 solve_A_prime_equals_A, substitution_like)

from conftest import rand_poly

x = Polynomial.x()
N = 12


class TestBuilders:
    def test_theta_columns(self):
        T = TruncatedOperator.theta(8)
        assert T.column_poly(3) == Polynomial([1, 3, 3, 1])
        assert T.valid_degree == 8

    def test_derivative_subdiagonal(self):
        D = TruncatedOperator.derivative_d(8)
        assert D.column_poly(3) == Polynomial([0, 0, 3])
        assert D.valid_degree == 8

    def test_substitution_degree_limits(self):
        S = TruncatedOperator.substitution(x * x, 4)
        assert S.column_poly(2) == Polynomial([0, 0, 0, 0, 1])
        assert S.valid_degree == 2

    def test_truncation_too_small(self):
        with pytest.raises(TruncationTooSmall):
            TruncatedOperator.multiplication(x ** 5, 4).functional_derivative() \
                .functional_derivative()

    def test_apply_checks_degree(self):
        S = TruncatedOperator.substitution(x * x, 4)
        with pytest.raises(TruncationTooSmall):
            S.apply(x ** 3)


class TestMatrixRealizations:
    def test_difference_form_operator_matches_action(self):
        from thetacalc.expr import eval_form, parse
        F = eval_form(parse("(x+1)*T^2 - 3*T + 2"))
        A = TruncatedOperator.from_difference_form(F, N)
        p = Polynomial([1, -2, 0, 1])  # 1 - 2x + x^3
        expect = ((x + 1) * p.shift(2) - 3 * p.shift(1) + 2 * p)
        assert A.apply(p) == expect

    def test_differential_operator_matches_action(self):
        coeffs = [x, Polynomial([2]), Polynomial.one()]  # x + 2D + D^2
        A = TruncatedOperator.from_differential(coeffs, N)
        p = Polynomial([0, 0, 0, 1])  # x^3
        expect = x * p + 2 * p.derivative() + p.derivative().derivative()
        assert A.apply(p) == expect

    def test_theta_is_shift_substitution(self):
        T = TruncatedOperator.theta(N)
        S = TruncatedOperator.substitution(Polynomial([1, 1]), N)
        assert T.equal_on_reliable(S)


class TestFunctionalDerivative:
    def test_theta_fixed_point(self):
        T = TruncatedOperator.theta(N)
        assert T.functional_derivative().equal_on_reliable(T)

    def test_substitution_rule(self):
        rng = random.Random(61)
        for _ in range(8):
            a = rand_poly(rng, 2, 4)
            Sa = TruncatedOperator.substitution(a, N)
            lhs = Sa.functional_derivative()
            rhs = TruncatedOperator.multiplication(a - x, N).compose(Sa)
            assert lhs.equal_on_reliable(rhs)

    def test_derivative_of_d_is_identity(self):
        D = TruncatedOperator.derivative_d(N)
        assert D.functional_derivative().equal_on_reliable(
            TruncatedOperator.identity(N))

    def test_derivation_law_for_composition(self):
        rng = random.Random(62)
        builders = [
            lambda: TruncatedOperator.theta(N),
            lambda: TruncatedOperator.derivative_d(N),
            lambda: TruncatedOperator.multiplication(rand_poly(rng, 2, 3), N),
            lambda: TruncatedOperator.substitution(rand_poly(rng, 1, 3), N),
        ]
        for _ in range(25):
            A = rng.choice(builders)()
            B = rng.choice(builders)()
            try:
                lhs = A.compose(B).functional_derivative()
                rhs = (A.functional_derivative().compose(B)
                       + A.compose(B.functional_derivative()))
            except TruncationTooSmall:
                continue
            assert lhs.equal_on_reliable(rhs)


class TestAPrimeEqualsA:
    def test_theta(self):
        assert solve_A_prime_equals_A(TruncatedOperator.theta(N)) == Polynomial.one()

    def test_scaled_theta(self):
        A = TruncatedOperator.multiplication(x * x, N).compose(
            TruncatedOperator.theta(N))
        assert solve_A_prime_equals_A(A) == x * x

    def test_not_a_solution(self):
        with pytest.raises(NotASolution):
            solve_A_prime_equals_A(TruncatedOperator.derivative_d(N))


class TestMultiplicationIdentity:
    def pairs(self, rng, count=6, max_deg=2):
        out = []
        for _ in range(count):
            out.append((rand_poly(rng, max_deg, 4), rand_poly(rng, max_deg, 4)))
        return out

    def test_leibniz(self):
        rng = random.Random(63)
        D = TruncatedOperator.derivative_d(N)
        assert check_multiplication_identity(D, 0, RationalFunction.zero(),
                                             self.pairs(rng))

    def test_theta_multiplicative(self):
        rng = random.Random(64)
        T = TruncatedOperator.theta(N)
        assert check_multiplication_identity(T, 1, RationalFunction.one(),
                                             self.pairs(rng))

    def test_derivation_family_random(self):
        rng = random.Random(65)
        for _ in range(10):
            xi = rand_poly(rng, 1, 3)
            xi1 = rand_poly(rng, 1, 3)
            A = derivation_like(xi, xi1, N)
            assert check_multiplication_identity(
                A, 0, RationalFunction(xi), self.pairs(rng, 4))

    def test_substitution_family_random(self):
        rng = random.Random(66)
        for _ in range(10):
            w = rand_poly(rng, 1, 3, nonzero=True)
            mu = rand_poly(rng, 1, 3)
            xi = rand_poly(rng, 1, 3)
            A = substitution_like(w, mu, xi, N)
            alpha = RationalFunction(Polynomial.one(), w)
            assert check_multiplication_identity(
                A, alpha, RationalFunction(xi), self.pairs(rng, 4, 2))


class TestClassify:
    def test_theta(self):
        spec = classify_mult_operator(TruncatedOperator.theta(N))
        assert spec.kind == "substitution-like"
        assert spec.alpha == RationalFunction.one()
        assert spec.mu == Polynomial([1, 1])
        assert spec.xi == RationalFunction.one()

    def test_derivation_instance(self):
        A = TruncatedOperator.derivative_d(N).scaled(2) \
            + TruncatedOperator.multiplication(x, N)
        spec = classify_mult_operator(A)
        assert spec.kind == "derivation-like"
        assert spec.alpha.is_zero()
        assert spec.xi == RationalFunction(x)
        assert spec.xi1 == RationalFunction(x * x + 2)

    def test_d_squared_not_classifiable(self):
        D = TruncatedOperator.derivative_d(N)
        with pytest.raises(NotClassifiable):
            classify_mult_operator(D.compose(D))

    def test_roundtrip_on_specs(self):
        rng = random.Random(67)
        for _ in range(8):
            xi = rand_poly(rng, 1, 3)
            xi1 = rand_poly(rng, 1, 3)
            A = derivation_like(xi, xi1, N)
            spec = classify_mult_operator(A)
            assert spec.kind == "derivation-like"
            assert spec.xi == RationalFunction(xi)
            assert spec.xi1 == RationalFunction(xi1)
        for _ in range(8):
            w = rand_poly(rng, 0, 3, nonzero=True)  # constant weight
            mu = rand_poly(rng, 1, 3)
            if mu == x:
                continue
            xi = rand_poly(rng, 1, 3)
            A = substitution_like(w, mu, xi, N)
            spec = classify_mult_operator(A)
            assert spec.kind == "substitution-like"
            assert spec.mu == mu
            assert spec.alpha == RationalFunction(Polynomial.one(), w)


class TestGrevy:
    def test_equal_operators_vanish(self):
        T = TruncatedOperator.theta(N)
        assert grevy_determinant([T, T]).is_zero_on_reliable()

    def test_proportional_thetas_vanish(self):
        T = TruncatedOperator.theta(N)
        assert grevy_determinant([T, T.scaled(2)]).is_zero_on_reliable()

    def test_d_and_theta_nonzero(self):
        D = TruncatedOperator.derivative_d(N)
        T = TruncatedOperator.theta(N)
        G = grevy_determinant([D, T])
        assert not G.is_zero_on_reliable()
        assert G.apply(x) == -x

    def test_duplicated_in_triple(self):
        rng = random.Random(68)
        D = TruncatedOperator.derivative_d(N)
        T = TruncatedOperator.theta(N)
        M = TruncatedOperator.multiplication(rand_poly(rng, 1, 3), N)
        G = grevy_determinant([D, T, D])
        assert G.is_zero_on_reliable()


class TestNsymb:
    def test_first_order_substitution(self):
        a = x + 3
        lams = [RationalFunction.one(), RationalFunction(-(a - x))]
        reports = nsymb_solution_check(lams, [a], N=N)
        assert reports[0].operator_is_zero

    def test_second_order_shifts(self):
        lams = [RationalFunction.one(), RationalFunction.constant(-3),
                RationalFunction.constant(2)]
        reports = nsymb_solution_check(lams, [x + 1, x + 2], N=N)
        assert all(r.operator_is_zero for r in reports)

    def test_candidate_not_a_root(self):
        lams = [RationalFunction.one(), RationalFunction.constant(-3),
                RationalFunction.constant(2)]
        with pytest.raises(CandidateNotARoot):
            nsymb_solution_check(lams, [x], N=N)

    def test_rational_lambda_coefficients(self):
        # lambda_0 A' - (a-x) lambda_0 A with a rational-function scale
        a = x + 2
        lam0 = RationalFunction(Polynomial.one(), x + 5)
        lams = [lam0, lam0 * RationalFunction(-(a - x))]
        reports = nsymb_solution_check(lams, [a], N=N)
        assert reports[0].operator_is_zero
