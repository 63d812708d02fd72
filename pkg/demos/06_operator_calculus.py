#!/usr/bin/env python3
"""Functional calculus on truncated polynomial spaces.

The functional derivative A'(phi) = A(x*phi) - x*A(phi) plays the role of
d/dz for operators: the shift T is its fixed point (the operator analogue
of the exponential), substitutions solve first-order symbolic ODEs, and a
determinant built from functional derivatives detects linear dependence of
operator families.
"""
from fractions import Fraction as Q

from thetacalc import (Polynomial, RationalFunction, TruncatedOperator,
                       check_multiplication_identity, classify_mult_operator,
                       derivation_like, grevy_determinant,
                       nsymb_solution_check, solve_A_prime_equals_A,
                       substitution_like)

x = Polynomial.x()
N = 12
T = TruncatedOperator.theta(N)
D = TruncatedOperator.derivative_d(N)

print("== the functional derivative ==")
print("T' = T:", T.functional_derivative().equal_on_reliable(T))
print("D' = I:", D.functional_derivative().equal_on_reliable(
    TruncatedOperator.identity(N)))
S = TruncatedOperator.substitution(x * x, N)
rhs = TruncatedOperator.multiplication(x * x - x, N).compose(S)
print("S_mu' = M_(mu - x) S_mu for mu = x^2:",
      S.functional_derivative().equal_on_reliable(rhs))

print()
print("== solving A' = A ==")
A = TruncatedOperator.multiplication(x * x + 1, N).compose(T)
eps = solve_A_prime_equals_A(A)
print("A = M_(x^2+1) T satisfies A' = A with multiplier:", eps)

print()
print("== the generalized multiplication theorem ==")
pairs = [(x + 1, x * x), (x * x - 2, x), (x, x)]
print("derivative operator (alpha=0, xi=0):",
      check_multiplication_identity(D, 0, RationalFunction.zero(), pairs))
print("shift operator (alpha=1, xi=1):  ",
      check_multiplication_identity(T, 1, RationalFunction.one(), pairs))
A0 = derivation_like(x, x * x + 2, N)
print("derivation family member:        ",
      check_multiplication_identity(A0, 0, RationalFunction(x), pairs))
A1 = substitution_like(Polynomial.constant(2), x + 3, x, N)
print("substitution family member:      ",
      check_multiplication_identity(A1, Q(1, 2), RationalFunction(x), pairs))

print()
print("== classification back to canonical form ==")
for op, label in [(T, "T"), (D.scaled(2) + TruncatedOperator.multiplication(x, N),
                             "2D + M_x"), (A1, "M_2 S_(x+3) + M_(x-2)")]:
    spec = classify_mult_operator(op)
    print("  %-22s -> %s, alpha=%s, mu=%s" % (label, spec.kind, spec.alpha,
                                              spec.mu))

print()
print("== operator determinant ==")
print("proportional family vanishes:",
      grevy_determinant([T, T.scaled(3)]).is_zero_on_reliable())
G = grevy_determinant([D, T])
print("{D, T} determinant applied to x:", G.apply(x))

print()
print("== symbolic operator ODEs ==")
# f(z) = (z-x-1)(z-x-2): the two shift substitutions solve
# A'' - 3A' + 2A = 0 exactly
lams = [RationalFunction.one(), RationalFunction.constant(-3),
        RationalFunction.constant(2)]
for rep in nsymb_solution_check(lams, [x + 1, x + 2], N=N):
    print("  candidate a(x) = %s: operator combination vanishes: %s"
          % (rep.candidate, rep.operator_is_zero))
