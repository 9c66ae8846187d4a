"""Truncated formal series over exact rationals.

Shows the truncation convention (degree cap N keeps degrees < N), the
exponential generators every formula is built from, the algebraic
identities they satisfy, and the canonical text round trip.
"""

from fractions import Fraction

from wittenform import (FormalSeries, IntersectionForm, exp_linear,
                        exp_quadratic, hyperbolic_plane)

H = hyperbolic_plane()

print("exp(Q/2) for H, cap 6 (degrees < 6):")
eq = exp_quadratic(H, 6)
print(eq.to_text())
print()

k = (1, -2)
print(f"exp<K,h> for K = {k} (duals through the form: <K,h> = "
      f"{H.dual_coefficients(k)} . h), cap 4:")
el = exp_linear(H, k, 4)
print(el.to_text())
print()

neg = IntersectionForm([[-x for x in row] for row in H.gram])
print("identities, exact to the cap:")
print("  exp(Q/2) exp(-Q/2) = 1:",
      eq * exp_quadratic(neg, 6) == FormalSeries.one(2, 6))
minus_k = tuple(-x for x in k)
print("  exp<K,h> exp<-K,h> = 1:",
      exp_linear(H, k, 6) * exp_linear(H, minus_k, 6)
      == FormalSeries.one(2, 6))
print("  d/dh1 exp(Q/2) = (Q-gradient) exp(Q/2):",
      eq.derivative(0)
      == (FormalSeries(2, 6, {(0, 1): Fraction(2)}) * eq).truncate_to(5))
print()

print("truncation semantics: congruence mod degree N compares degrees < N")
a = FormalSeries(1, 5, {(0,): Fraction(1), (3,): Fraction(1)})
one = FormalSeries.one(1, 5)
print("  1 + h^3 = 1  mod degree 3:", a.congruent_mod_degree(one, 3))
print("  1 + h^3 = 1  mod degree 4:", a.congruent_mod_degree(one, 4))
print()

print("canonical text round trip:")
text = el.to_text()
print("  parsed back equal:", FormalSeries.parse(text) == el)
