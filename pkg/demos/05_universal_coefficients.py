"""Fitting the unknown universal coefficients of the structure formula.

Each spin-c entry contributes sum_i p_i(<A,h>, <B,h>) Q^i with p_i an
unknown homogeneous polynomial of degree delta - 2m - 2i and i capped by
min(level, floor(delta/2) - m). The demo assembles that object symbolically
for a synthetic single-basic-class manifold, pins it against point values
generated from the conjectured identity, and shows what happens when an
observation is corrupted.
"""

from fractions import Fraction

from wittenform import (FitProblem, ManifoldData, Observation, SpincEntry,
                        build_template, hyperbolic_plane, point_evaluate,
                        solve_coefficients, validate_solution)
from wittenform.manifold_io import witten_consistent_km
from wittenform.series import HomogeneousPolynomial

H = hyperbolic_plane()

print("template sizes (delta, m, level) -> unknown count:")
for args in ((2, 1, 0), (4, 0, 1), (2, 0, 2), (6, 0, 3)):
    print(f"  {args} -> {build_template(*args).total_unknowns}")
print()

delta, mm = 4, 0
m = ManifoldData(name="demo", chi=2, sigma=-2, b_plus=1, form=H, w2=(0, 0),
                 spinc=(SpincEntry((0, 0), 2),), sw_simple_type=True,
                 check_topology=False)
lam = (1, delta // 2)   # admissible with w = lambda; level = delta/2
w = lam

km = witten_consistent_km(m, w)
observed = point_evaluate(km, H, delta, mm)
print(f"observed D(h^{delta - 2 * mm} x^{mm}) under the x->2 convention:")
for line in observed.to_text().splitlines()[1:]:
    print("  ", line)
print()

problem = FitProblem((Observation(m, w, lam, delta, mm, observed,
                                  provenance="point_evaluate"),))
report = solve_coefficients(problem)
print(report.to_text())
validation = validate_solution(problem, report)
print("residuals exactly zero:", all(validation.residual_zero))
print()

print("corrupting one coefficient of the observation:")
mono = sorted(observed.terms)[0]
terms = dict(observed.terms)
terms[mono] += Fraction(1, 3)
bad = Observation(m, w, lam, delta, mm,
                  HomogeneousPolynomial(2, delta + 1, terms, degree=delta),
                  provenance="corrupted")
bad_report = solve_coefficients(FitProblem((problem.observations[0], bad)))
print("status:", bad_report.status)
print("witness (observation, monomial):", bad_report.witness)
