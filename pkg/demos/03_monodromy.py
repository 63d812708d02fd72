#!/usr/bin/env python3
"""The shift operator as a closed contour around a singular point.

When T means "continue analytically once around x1", a matrix M describing
its action on a solution space yields a constant-coefficient difference
equation (through the characteristic polynomial) satisfied by the tower
y, Ty, T^2 y, ...; the eigenvalue/Jordan data of M gives the familiar local
basis x^rho * (polynomial in log).
"""
import math
from fractions import Fraction as Q

from thetacalc import (FormalLocalSolution, MonodromySpec,
                       canonical_system_with_action,
                       companion_difference_equation, local_structure,
                       minimal_relation, theta_determinant, theta_on_local)
from thetacalc.expr import format_form

mono = FormalLocalSolution.monomial

print("== from a monodromy matrix to a difference equation ==")
M = MonodromySpec([[1, 1], [0, 1]])
print("matrix [[1,1],[0,1]]  ->", format_form(companion_difference_equation(M)))
M3 = MonodromySpec([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
print("cyclic permutation    ->", format_form(companion_difference_equation(M3)),
      " (the root-shuffling case: exponents 0, 1/3, 2/3, no logs)")
print("eliminating the tower directly gives the minimal relation:")
print("identity matrix       ->", format_form(minimal_relation(
    MonodromySpec([[1, 0], [0, 1]]))))

print()
print("== local structure: exponents and Jordan data ==")
for rows, label in [([[1, 1], [0, 1]], "[[1,1],[0,1]]"),
                    ([[-1, 0], [0, -1]], "-I"),
                    ([[-2, 0], [0, 3]], "diag(-2,3)")]:
    st = local_structure(MonodromySpec(rows))
    for b in st.blocks:
        print("  %-14s lambda=%s rho=%s |lambda|=%s blocks=%s"
              % (label, b.eigenvalue, b.rho, b.mag, list(b.jordan_sizes)))

c5, s5 = math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5)
stn = local_structure(MonodromySpec([[c5, -s5], [s5, c5]]))
print("  numeric rotation by 2*pi/5: exponents",
      sorted(str(b.rho) for b in stn.blocks))

print()
print("== canonical fundamental systems ==")
sols, action = canonical_system_with_action(M)
print("solutions for the Jordan block:", sols)
print("shift action on them:", action)
t = sols[1]
print("one tour maps t ->", theta_on_local(t, Q(1)))

print()
print("== the determinant criterion on formal solutions ==")
one = FormalLocalSolution.one()
print("det[T^i y_j] for {1, t}:", theta_determinant([one, t]))
a = mono(rho=Q(1, 2))
b = mono(rho=Q(1, 3))
print("for {x^(1/2), x^(1/3)}:", theta_determinant([a, b]))
c = mono(coeff=Q(3), rho=Q(1, 2))
print("proportional pair gives exactly zero:",
      theta_determinant([a, c]).is_exact_zero())

print()
print("== a planted relation with shift-invariant coefficients ==")
y1 = mono(rho=Q(1, 2), mag=Q(2)) + mono(rho=Q(1, 2))
y2 = mono(logpow=1)
phi1 = mono(coeff=Q(2), rho=Q(1))   # integer exponents are shift-invariant
phi2 = mono(coeff=Q(-1), rho=Q(0))
y3 = phi1 * y1 + phi2 * y2
print("determinant vanishes:", theta_determinant([y1, y2, y3]).is_exact_zero())
