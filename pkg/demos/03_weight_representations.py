"""Finite and truncated highest-weight representations on the weight side.

The weight ladder descends along iterates of g.  Two closure mechanisms make
it finite: a periodic orbit (the weight returns to the top) or the cut
equation alpha + g^(d)(alpha) + 1 = 0.  For g(x) = -x^2 + 3x - 1 and d = 2
the cut equation has two real roots; only one sits inside the invertibility
region, exactly as the exclusion in the stock figure shows.
"""

import numpy as np

from gjsmap import (
    CharFn,
    Orientation,
    RepKind,
    build_gsl2,
    casimir_gsl2,
    cut_condition_solve,
    matrix_J0,
    matrix_Jplus,
    periodic_condition_solve,
    verify_gsl2_relations,
)

np.set_printoptions(precision=6, suppress=True)

sl2 = CharFn((-1.0, 1.0), Orientation.WEIGHT)
print("Standard spin-1 from g(x) = x - 1, highest weight 1:")
rep = build_gsl2(sl2, 1.0, 3, RepKind.FINITE_CUT)
print("  J0:\n", matrix_J0(rep).entries)
print("  J+:\n", matrix_Jplus(rep).entries)
print("  casimir diagonal:", np.diag(casimir_gsl2(rep).entries), " (j(j+1) = 2)")

gn = CharFn((-1.0, 3.0, -1.0), Orientation.WEIGHT)
print("\nCut condition for g(x) = -x^2 + 3x - 1, two states:")
sols = cut_condition_solve(gn, 2)
print("  included roots:", [round(r, 8) for r in sols.included])
print("  excluded roots:", [round(r, 8) for r in sols.excluded],
      "  (outside alpha < 1.5)")

root = sols.included[0]
rep2 = build_gsl2(gn, root, 2, RepKind.FINITE_CUT, cut_tol=1e-9)
print(f"\nTwo-state representation at alpha_j = {root:.8f}:")
print("  weights:", np.round(rep2.weights, 8))
print("  closure defect alpha_j + g^(2)(alpha_j) + 1 =", f"{rep2.cut_residual:.2e}")
print("  casimir diagonal:", np.diag(casimir_gsl2(rep2).entries),
      f" (alpha_j(alpha_j+1) = {root * (root + 1):.8f})")
report = verify_gsl2_relations(rep2, tol=1e-10)
print("  relation residuals:", {k: f"{v:.2e}" for k, v in report.residuals.items()})

print("\nPeriodic condition, d = 1 (one-state representation at the fixed point):")
print("  roots:", periodic_condition_solve(gn, 1))

print("\nTruncated infinite ladder from alpha_j = 1.2 (descends toward 1):")
trunc = build_gsl2(gn, 1.2, 6, RepKind.TRUNCATED_INFINITE)
print("  weights:", np.round(trunc.weights, 6))
print("  relations pass on interior columns:",
      verify_gsl2_relations(trunc, tol=1e-10).passed)
