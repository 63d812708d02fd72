#!/usr/bin/env python3
"""Tour of the shift-operator form algebra.

A linear difference form a_0(x) + a_1(x)T + ... + a_m(x)T^m acts on a
sequence f by sum a_k(t) f(t+k).  Multiplication is noncommutative because
the shift drags coefficients along: T a(x) = a(x+1) T.
"""
from fractions import Fraction as Q

from thetacalc import (DifferenceForm, GridFunction, Polynomial,
                       RationalFunction, cauchy_partial_fractions,
                       const_coeff_basis, form_apply, form_divides,
                       form_divrem, form_mul, partial_fraction_eval,
                       ruffini_divide)
from thetacalc.expr import eval_form, format_form, parse

x = Polynomial.x()
T = DifferenceForm.theta()

print("== noncommutativity ==")
xop = DifferenceForm.from_scalar(RationalFunction.x())
print("T * x       =", format_form(form_mul(T, xop)))       # (x+1)*T
print("x * T       =", format_form(form_mul(xop, T)))       # x*T
F = T - xop
print("(T-x)(T-x)  =", format_form(form_mul(F, F)))

print()
print("== acting on sequences ==")
# T^2 - 3T + 2 annihilates 2^t (2 is a characteristic root)
G = DifferenceForm.from_constant_coeffs([2, -3, 1])
geo = GridFunction.sample(lambda t: Q(2) ** t, 0, 12)
print("(T^2-3T+2) applied to 2^t at t=0..5:",
      [str(form_apply(G, geo, t)) for t in range(6)])

print()
print("== left division with remainder ==")
A = eval_form(parse("(x+1)*T^3 - 2*T^2 + T - x"))
B = eval_form(parse("T^2 - x*T + 1"))
Gam, R = form_divrem(A, B)
print("A           =", format_form(A))
print("B           =", format_form(B))
print("quotient    =", format_form(Gam))
print("remainder   =", format_form(R))
print("check A == Gam*B + R:", form_mul(Gam, B) + R == A)

print()
print("== the shortcut cascade for divisors T - gamma(x) ==")
quot, rem = ruffini_divide(A, RationalFunction.x())
Gam2, R2 = form_divrem(A, T - xop)
print("cascade quotient matches general division:", quot == Gam2)
print("cascade remainder:", rem)

print()
print("== divisibility and shared roots ==")
B1 = T - DifferenceForm.from_scalar(RationalFunction.constant(2))
A1 = form_mul(eval_form(parse("T - x")), B1)
print("B = T - 2 divides (T-x)(T-2):", form_divides(B1, A1))
print("2^t is a root of the product as well:",
      all(form_apply(A1, geo, t) == 0 for t in range(8)))

print()
print("== constant coefficients: symbolic solution basis ==")
charpoly = Polynomial([2, -3, 1])          # (z-1)(z-2)
print("basis for y(t+2)-3y(t+1)+2y(t)=0:", const_coeff_basis(charpoly))
charpoly2 = Polynomial([1, -2, 1])         # (z-1)^2
print("double root gives a log-style factor t:", const_coeff_basis(charpoly2))

print()
print("== symbolic resolution residues: 1/F as partial fractions ==")
Fpoly = (x - 1) * (x - 1) * (x - 3)
blocks = cauchy_partial_fractions(Fpoly)
for b in blocks:
    print("  root %s, multiplicity %d, residues %s"
          % (b.root, b.multiplicity, [str(r) for r in b.residues]))
z0 = Q(7, 2)
print("reconstruction at z=7/2 is exact:",
      partial_fraction_eval(blocks, z0) == Q(1) / Fpoly.eval(z0))
