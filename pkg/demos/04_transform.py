#!/usr/bin/env python3
"""Kernel transform between differential operators and shift relations.

Under f(x) = integral of phi(y) * y^(x-1) dy with boundary terms arranged
to vanish, each term y^lam * phi^(r) becomes a falling-factorial-weighted
shift of f, so linear ODEs with polynomial coefficients become linear
difference relations, and conversely on the image.
"""
from fractions import Fraction as Q
from math import factorial

from thetacalc import (DifferentialOperator, GridFunction, Polynomial,
                       ShiftedDifferenceRelation, as_theta_form,
                       diff_to_difference, difference_to_diff, form_apply)
from thetacalc.expr import format_form

print("== the factorial recurrence ==")
# phi' + phi = 0 (solved by e^-y; the kernel integral is the Gamma function)
gamma_op = DifferentialOperator({(0, 1): 1, (0, 0): 1})
rel = diff_to_difference(gamma_op)
print("phi' + phi = 0   becomes  ", rel)
fact = lambda n: Q(factorial(n - 1))
print("annihilates (n-1)! for n=2..20:",
      all(rel.evaluate(fact, n) == 0 for n in range(2, 21)))

print()
print("== the Beta-function recurrence ==")
for a in (1, 2, 3):
    beta_op = DifferentialOperator({(0, 1): 1, (1, 1): -1, (0, 0): a})
    relb = diff_to_difference(beta_op)
    B = lambda n: Q(factorial(n - 1) * factorial(a)) / factorial(n + a)
    print("a=%d:" % a, relb, "| annihilates B(n, a+1):",
          all(relb.evaluate(B, n) == 0 for n in range(2, 16)))

print()
print("== exact inversion on the image ==")
back = difference_to_diff(rel)
print("preimage of the factorial recurrence:", back)
print("round trip is exact:", back == gamma_op)
outside = ShiftedDifferenceRelation({-2: Polynomial.one()})
print("a relation outside the image:", difference_to_diff(outside))

print()
print("== embedding as a difference form ==")
form, offset = as_theta_form(rel)
print("form:", format_form(form), " with base offset", offset)
g = GridFunction.sample(fact, 1, 14)
print("form kills the factorial grid:",
      all(form_apply(form, g, t) == 0 for t in range(1, 10)))
