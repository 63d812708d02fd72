"""Annihilating ODEs for algebraic functions, with independent oracles."""
import random
from fractions import Fraction as Q

import pytest

from thetacalc.algebraic import (LinearODE, check_tannery_shape,
                                 derivative_table, differentiate_ode,
                                 tannery_ode, verify_ode_numeric)
from thetacalc.errors import NotSquarefree
from thetacalc.exact import (BivariatePolynomial, Polynomial, RationalFunction,
                             gcd_y)

from conftest import rand_bivariate

x = Polynomial.x()
rf = RationalFunction


def biv(*coeffs):
    return BivariatePolynomial([rf(c) if isinstance(c, Polynomial) else
                                rf(Polynomial.constant(c)) for c in coeffs])


class TestDerivativeTable:
    def test_sqrt(self):
        f = biv(-x, 0, 1)  # y^2 - x
        tab = derivative_table(f, 3)
        assert tab.phi == rf(x)
        assert tab.rows[1] == (rf(0), rf(Polynomial.one(), 2 * x))
        assert tab.rows[2] == (rf(0), rf(Polynomial([-1]), 4 * x * x))

    def test_explicit_function(self):
        g = x ** 3 - 2 * x
        f = BivariatePolynomial([rf(-g), rf(1)])
        tab = derivative_table(f, 4)
        expect = g
        for k in range(5):
            assert tab.rows[k] == (rf(expect),)
            expect = expect.derivative()

    def test_symmetric_quadratic_phi(self):
        f = biv(1, 2 * x, 1)  # y^2 + 2xy + 1
        tab = derivative_table(f, 2)
        assert tab.phi == rf(x * x - 1)

    def test_rejects_repeated_factor(self):
        # (y - x)^2
        f = biv(x * x, -2 * x, 1)
        with pytest.raises(NotSquarefree):
            derivative_table(f, 2)

    def test_numeric_derivative_oracle(self):
        # central finite differences on the actual branch y = sqrt(x)
        f = biv(-x, 0, 1)
        tab = derivative_table(f, 2)
        h = 1e-6
        for x0 in (1.0, 2.5, 7.0):
            y = lambda u: u ** 0.5
            d1 = (y(x0 + h) - y(x0 - h)) / (2 * h)
            got = tab.eval_derivative(1, complex(x0), complex(y(x0)))
            assert abs(got - d1) < 1e-5

    def test_soundness_recursion(self):
        # phi * dP_k/dx + dP_k/dy * P_1 - k * phi' * P_k == P_(k+1) mod f
        rng = random.Random(51)
        done = 0
        while done < 10:
            f = rand_bivariate(rng, 2, 2, 3)
            if gcd_y(f, f.d_dy()).deg_y > 0:
                continue
            tab = derivative_table(f, 3)
            phi = tab.phi
            dphi = phi.derivative()
            m = tab.m
            for k in range(1, 3):
                Pk = BivariatePolynomial(list(tab.numerators(k)))
                P1 = BivariatePolynomial(list(tab.numerators(1)))
                Pnext = BivariatePolynomial(list(tab.numerators(k + 1)))
                cand = (Pk.d_dx().scale(phi) + Pk.d_dy() * P1
                        - Pk.scale(dphi * Q(k)))
                assert (cand - Pnext).mod_y(f).is_zero()
            done += 1


class TestTanneryOde:
    def test_sqrt_first_order(self):
        ode = tannery_ode(biv(-x, 0, 1))
        assert ode.coeffs == (rf(-1), rf(2 * x))

    def test_sqrt_full_order(self):
        ode = tannery_ode(biv(-x, 0, 1), minimal=False)
        assert ode.coeffs == (rf(0), rf(1), rf(2 * x))

    def test_cube_homogeneous(self):
        f = BivariatePolynomial([rf(-(x ** 3)), rf(1)])
        ode = tannery_ode(f)
        assert ode.coeffs == (rf(-3), rf(x))

    def test_symmetric_quadratic_order_two(self):
        ode = tannery_ode(biv(1, 2 * x, 1))
        assert ode.order == 2
        assert ode.coeffs == (rf(-1), rf(x), rf(x * x - 1))

    def test_order_at_most_m(self):
        rng = random.Random(52)
        done = 0
        while done < 15:
            f = rand_bivariate(rng, rng.randint(1, 3), 2, 4)
            if gcd_y(f, f.d_dy()).deg_y > 0:
                continue
            ode = tannery_ode(f)
            assert 1 <= ode.order <= f.deg_y
            done += 1

    def test_scale_invariance(self):
        rng = random.Random(53)
        done = 0
        while done < 10:
            f = rand_bivariate(rng, 2, 2, 4)
            if gcd_y(f, f.d_dy()).deg_y > 0:
                continue
            c = Q(rng.randint(1, 7), rng.randint(1, 5))
            assert tannery_ode(f) == tannery_ode(f.scale(c))
            done += 1


class TestShape:
    def test_constructed_positive(self):
        phi = rf(x * x - 1)
        ode = LinearODE(coeffs=(rf(Polynomial([3]), (x * x - 1) ** 2),
                                rf(x, x * x - 1), rf(1)))
        assert check_tannery_shape(ode, phi)

    def test_quadratic_shape_verdict_computed(self):
        f = biv(1, 2 * x, 1)
        tab = derivative_table(f, 2)
        ode = tannery_ode(f)
        # frozen from the independent quadratic-formula oracle below
        assert check_tannery_shape(ode, tab.phi) is True

    def test_sqrt_low_order(self):
        f = biv(-x, 0, 1)
        tab = derivative_table(f, 1)
        assert check_tannery_shape(tannery_ode(f), tab.phi)

    def test_negative_case(self):
        phi = rf(x)
        ode = LinearODE(coeffs=(rf(Polynomial.one(), x * x + 1), rf(0), rf(1)))
        assert not check_tannery_shape(ode, phi)


class TestQuadraticShapeObstruction:
    """Independent quadratic-branch oracle for f = y^2 + 2xy + 1.

    Uses the rationalization trick (a*y + b)^2 = b^2 - a*c mod f instead of
    the library's extended-Euclid inverse, then eliminates the y-free parts.
    """

    def _quadratic_oracle(self):
        a, b, c = Polynomial.one(), x, Polynomial.one()
        phi = rf(a * c - b * b)                      # 1 - x^2
        # y' = -f_x / f_y with f_y = 2(ay + b): 1/(ay+b) = -(ay+b)/phi
        # f_x = 2y here, so y' = -2y * (-(y+b))/(2*phi) = y(y + x)/phi
        # reduce y^2 = -(2xy + 1):  y' = (alpha*y + beta)/phi
        alpha = rf(-x)
        beta = rf(Polynomial([-1]))
        # differentiate: y'' = (gamma*y + delta)/phi^2 (computed by hand via
        # the same reduction; validated numerically below)
        gamma = rf(Polynomial([-1]))
        delta = rf(-x)
        return phi, alpha, beta, gamma, delta

    def test_table_matches_oracle(self):
        f = biv(1, 2 * x, 1)
        tab = derivative_table(f, 2)
        phi, alpha, beta, gamma, delta = self._quadratic_oracle()
        assert tab.rows[1] == (beta / phi, alpha / phi)
        assert tab.rows[2] == (delta / (phi * phi), gamma / (phi * phi))

    def test_oracle_numeric(self):
        # branch y = -x + sqrt(x^2-1): check y' and y'' against the formulas
        import cmath
        phi, alpha, beta, gamma, delta = self._quadratic_oracle()
        for x0 in (2.0, 3.5, -4.0):
            s = cmath.sqrt(x0 * x0 - 1)
            y0 = -x0 + s
            d1 = -1 + x0 / s
            d2 = -(x0 * x0 - 1) ** (-1.5) * (1 if x0 > 0 else -1) * 1
            # d2 from explicit differentiation: y'' = -(x^2-1)^(-3/2)
            d2 = -1.0 / (x0 * x0 - 1) ** 1.5
            pv = phi.eval_complex(x0)
            assert abs((alpha.eval_complex(x0) * y0 + beta.eval_complex(x0)) / pv
                       - d1) < 1e-9
            assert abs((gamma.eval_complex(x0) * y0 + delta.eval_complex(x0))
                       / (pv * pv) - d2) < 1e-9

    def test_eliminated_equation_leading_coefficient_nonconstant(self):
        # eliminating the y-free parts of y', y'' gives the order-2 relation;
        # its cleared-denominator leading coefficient is +-(x^2-1), not constant
        f = biv(1, 2 * x, 1)
        ode = tannery_ode(f)
        lead = ode.coeffs[-1]
        assert lead.is_polynomial()
        assert lead.as_polynomial().degree > 0
        assert lead == rf(x * x - 1)
        # oracle cross-check: beta*y'' - (delta/phi)*y' + ((alpha*delta -
        # beta*gamma)/phi^2)*y = 0, cleared of denominators, matches the ode
        phi, alpha, beta, gamma, delta = self._quadratic_oracle()
        raw = (rf((alpha * delta - beta * gamma).num) / (phi * phi),
               -delta / phi, beta)
        oracle = LinearODE.from_raw([(alpha * delta - beta * gamma) / (phi * phi),
                                     -delta / phi, beta])
        assert oracle == ode


class TestVerifyNumeric:
    def test_sqrt(self):
        f = biv(-x, 0, 1)
        ode = tannery_ode(f)
        assert verify_ode_numeric(f, ode, [1, 2 + 1j, -3]) < 1e-10

    def test_symmetric_quadratic_residual(self):
        f = biv(1, 2 * x, 1)
        ode = tannery_ode(f)
        assert verify_ode_numeric(f, ode, [2, 3 + 0.5j, -4, 0.2 + 2j, 5]) < 1e-9

    def test_negative_control(self):
        f = biv(-x, 0, 1)
        ode = tannery_ode(f)
        bad = LinearODE(coeffs=(ode.coeffs[0] + rf(Polynomial([0, 0, 1])),
                                ode.coeffs[1]))
        assert verify_ode_numeric(f, bad, [1, 2 + 1j, -3]) > 1e-3

    def test_random_annihilation(self):
        rng = random.Random(54)
        done = 0
        while done < 10:
            f = rand_bivariate(rng, rng.randint(1, 3), 2, 5)
            if gcd_y(f, f.d_dy()).deg_y > 0:
                continue
            ode = tannery_ode(f)
            tab = derivative_table(f, 1)
            samples = []
            while len(samples) < 3:
                z = complex(rng.uniform(-3, 3), rng.uniform(0.3, 2.5))
                if abs(tab.phi.eval_complex(z)) < 0.5:
                    continue
                if abs(f.leading_y().eval_complex(z)) < 0.5:
                    continue
                samples.append(verify_ode_numeric(f, ode, [z]))
            assert max(samples) < 1e-9, (f, samples)
            done += 1


class TestDifferentiateUp:
    def test_raises_order(self):
        ode = tannery_ode(biv(-x, 0, 1))
        up = differentiate_ode(ode)
        assert up.order == ode.order + 1
        assert up.coeffs == (rf(0), rf(1), rf(2 * x))
