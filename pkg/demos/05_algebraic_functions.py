#!/usr/bin/env python3
"""Annihilating linear ODEs for roots of f(x, y) = 0.

A branch y(x) of an algebraic equation only gets shuffled with the other
branches when x loops a critical point, so the branches satisfy a linear
ODE of order at most deg_y f.  The construction: write 1/f_y modulo f via a
Bezout pair A f + B f_y = phi(x), push derivatives into the form
y^(k) = P_k(x, y)/phi^k with deg_y P_k < m, and eliminate.
"""
from fractions import Fraction as Q

from thetacalc import (BivariatePolynomial, Polynomial, RationalFunction,
                       bezout_in_y, check_tannery_shape, derivative_table,
                       differentiate_ode, tannery_ode, verify_ode_numeric)
from thetacalc.expr import eval_bivariate, parse

x = Polynomial.x()
rf = RationalFunction

print("== the square root ==")
f = eval_bivariate(parse("y^2 - x"))
A, B, phi = bezout_in_y(f)
print("Bezout pair: A =", A, " B =", B, " phi =", phi)
tab = derivative_table(f, 3)
print("y'  as (c0 + c1*y):", [str(c) for c in tab.rows[1]])
print("y'' as (c0 + c1*y):", [str(c) for c in tab.rows[2]])
ode = tannery_ode(f)
print("minimal ODE:", ode)
print("its derivative raises the order to deg_y f:", differentiate_ode(ode))
print("numeric residual over {1, 2+i, -3}:",
      verify_ode_numeric(f, ode, [1, 2 + 1j, -3]))

print()
print("== when the claimed coefficient shape holds and when it breaks ==")
# claim: after normalizing the lead to 1, coefficient k is Q_k(x)/phi^k
f2 = eval_bivariate(parse("y^2 + 2*x*y + 1"))
tab2 = derivative_table(f2, 2)
ode2 = tannery_ode(f2)
print("f = y^2+2xy+1:  phi =", tab2.phi, "  ODE:", ode2)
print("leading coefficient is NOT constant:", ode2.coeffs[-1])
print("shape Q_k/phi^k after lead-normalization:",
      check_tannery_shape(ode2, tab2.phi))

print()
print("== the alternative elimination that keeps a remainder ==")
# Eliminating only the y-proportional part of y' leaves an inhomogeneous
# equation phi*y' - alpha*y = beta with beta free of y; differentiating
# until the polynomial remainder dies yields a homogeneous equation whose
# order EXCEEDS deg_y f and whose leading coefficient is again phi itself.
from thetacalc.algebraic import LinearODE

f4 = eval_bivariate(parse("y^2 + 2*x*y + x"))
tab4 = derivative_table(f4, 2)
alpha = tab4.rows[1][1] * tab4.phi   # coefficient of y in phi*y'
beta = tab4.rows[1][0] * tab4.phi    # the y-free remainder
print("for f = y^2+2xy+x:   phi*y' - (%s)*y = %s" % (alpha, beta))
inhomog = LinearODE.from_raw([-alpha, tab4.phi])
twice = differentiate_ode(differentiate_ode(inhomog))
print("beta has degree 1, so two derivatives kill it; the relation becomes")
print("   order %d (> deg_y f = 2):" % twice.order,
      [str(c) for c in twice.coeffs])
print("   numeric residual:", verify_ode_numeric(f4, twice, [2 + 1j, -3]))
print("the clean nullspace elimination stays at order 2:",
      tannery_ode(f4))

print()
print("== an explicit cubic branch ==")
f3 = eval_bivariate(parse("y - x^3"))
print("f = y - x^3 gives the homogeneous relation:", tannery_ode(f3))
