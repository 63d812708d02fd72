#!/usr/bin/env python3
"""Linear dependence of sequences via determinants and windowed ranks.

The determinant of the square sample matrix [f_j(m+i)] vanishes everywhere
exactly when the sequences satisfy a linear relation whose coefficients are
invariant under the unit shift; on finite windows the rank of the stacked
sample matrix classifies how many relations hold and where.
"""
from fractions import Fraction as Q

from thetacalc import (GridFunction, casoratian,
                       casoratian_zero_implies_relation_check,
                       christoffel_analyze, windowed_scan)

seq = lambda fn, base=-10, n=40: GridFunction.sample(fn, base, n)

print("== the determinant criterion ==")
polys = [seq(lambda t: Q(1)), seq(lambda t: Q(t)), seq(lambda t: Q(t * t))]
print("det for {1, t, t^2} at m=-3..3:",
      [str(casoratian(polys, m)) for m in range(-3, 4)])
dep = [seq(lambda t: Q(2) ** t if t >= 0 else Q(1, 2) ** (-t)),
       seq(lambda t: 3 * (Q(2) ** t if t >= 0 else Q(1, 2) ** (-t)))]
print("det for {2^t, 3*2^t} vanishes:",
      all(casoratian(dep, m) == 0 for m in range(-3, 4)))

print()
print("== windowed rank analysis, three cases ==")
f = seq(lambda t: Q(t * t))
rep_a = christoffel_analyze([f, f.scaled(2)], -3, 4)
print("one relation (case a):", rep_a.case,
      [[str(v) for v in rel] for rel in rep_a.relations])
rep_b = christoffel_analyze([f, f.scaled(2), f.scaled(5)], -3, 5)
print("two relations (case b):", rep_b.case, len(rep_b.relations))
rep_none = christoffel_analyze(polys, -2, 3)
print("full rank (no relation):", rep_none.case)

print()
print("== case c: interval decomposition by scanning ==")
vals_g = [Q(t) if t < 2 else Q(t * t + 1) for t in range(-8, 12)]
g = GridFunction(-8, vals_g)
h = GridFunction(-8, [Q(t) for t in range(-8, 12)])
for rep in windowed_scan([h, g], range(-8, 8), 3):
    print("  window [%d, %d): case %s, rank %d"
          % (rep.window[0], rep.window[1], rep.case, rep.rank))

print()
print("== recovering a constant-coefficient relation ==")
a = GridFunction(0, [Q(3 * i * i - 1) for i in range(14)])
b = GridFunction(0, [Q(2 * i + 5) for i in range(14)])
c = GridFunction(0, [2 * a(i) - 3 * b(i) for i in range(14)])
res = casoratian_zero_implies_relation_check([a, b, c], range(0, 12))
print("recovered relation (normalized):", [str(v) for v in res.coeffs])
print("window-limited:", res.window_limited)
