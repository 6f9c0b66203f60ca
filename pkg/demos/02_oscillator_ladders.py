"""Truncated matrix ladders for generalized oscillators.

Choosing f(x) = x + 1 with vacuum eigenvalue 0 gives back the textbook boson
operators; any other admissible polynomial deforms the ladder while keeping
the algebraic relations exact, which the residual report verifies.
"""

import numpy as np

from gjsmap import (
    CharFn,
    Orientation,
    build_gha,
    casimir_gha,
    gauss_factorial,
    gauss_numbers,
    matrix_Adag,
    matrix_H,
    verify_gha_relations,
)

np.set_printoptions(precision=6, suppress=True)

print("Standard boson ladder: f(x) = x + 1, alpha0 = 0, five levels")
boson = build_gha(CharFn((1.0, 1.0), Orientation.OSCILLATOR), 0.0, 5)
print("  eigenvalues:", boson.eigenvalues)
print("  raising matrix:\n", matrix_Adag(boson).entries)

print("\nDeformed ladder: f(x) = x^2 + 3x + 1 from alpha0 = -0.15")
rep = build_gha(CharFn((1.0, 3.0, 1.0), Orientation.OSCILLATOR), -0.15, 5)
print("  eigenvalues:", np.round(rep.eigenvalues, 6))
print("  rung weights:", np.round(rep.ladder, 6))
print("  Gauss numbers [m]:", np.round(gauss_numbers(rep.fn, rep.alpha0, 4), 6))
print("  Gauss factorial [4]!:", gauss_factorial(rep.fn, rep.alpha0, 4))

print("\nThe invariant combination Adag A - H is a constant, -alpha0:")
print(np.round(casimir_gha(rep).entries, 12))

print("\nDefining relations, residuals on the interior columns:")
report = verify_gha_relations(rep, tol=1e-10)
for name, value in report.residuals.items():
    print(f"  {name:22s} {value:.3e}")
print("  passed:", report.passed)

print("\nDiagonal of H for a ladder based at the fixed point collapses:")
flat = build_gha(CharFn((1.225, -2.5, 2.5), Orientation.OSCILLATOR), 0.7, 4)
print("  eigenvalues:", flat.eigenvalues, " (one-dimensional physics)")
print("  rungs:", flat.ladder)
