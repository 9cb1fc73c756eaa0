"""Isotropy of the end pairing and the dimension bound
===================================================

A curve in B x R that is horizontal at infinity records, at its ends, a
0-cycle on B.  Pairing an invariant 2-form of B against the end
restrictions of any two deformations gives exactly zero: deformations of
the curve cannot move its boundary cycle in directions the form can see.
Combined with a linear-algebra bound for isotropic subspaces of signed
block forms, this is what keeps equivalence classes small.

Everything is exact: the checks below assert literal zeros, not small
numbers.
"""

from troplin import (
    TropicalForm,
    infinity_restriction,
    isotropy_check,
    make_torus,
    roitman_bound_check,
)
import troplin as t
from troplin.manifold import translation_deck

AREA = TropicalForm(2, 2, (1,))
T = make_torus([(4, 0), (0, 4)])

circle = t.circle_embedding(T, (0, 0), (1, 0), 4, translation_deck((-4, 0)))
witness = t.modification_curve(circle, t.principal_function(4, [(0, 2), (2, -2)]))

print("witness curve in T^2 x R with weight-2 ends over (0,0) and (2,0)")
report = isotropy_check(witness, AREA)
for check in report.checks:
    print(f"  [{check.status}] {check.name}: {check.detail}")

space, vectors = infinity_restriction(witness, AREA)
result = roitman_bound_check(space, vectors)
print("graded end space:", len(space.blocks), "blocks of dimension 2,",
      "signs", [b.sign for b in space.blocks])
print("end restriction of the deformations: dim", result.dim_W,
      "<= bound", result.bound, "->", result.satisfied)

# The same holds for arbitrary circle modifications; try a messier one
# (degree 0 and class 0 + 2*1 - 1*2 = 0 mod 4, so it is principal).
divisor = [(0, -1), (1, 2), (2, -1)]
messy = t.modification_curve(circle, t.principal_function(4, divisor))
print("\nfour-ray modification:", "isotropy",
      isotropy_check(messy, AREA).status, end=", ")
space, vectors = infinity_restriction(messy, AREA)
print("bound", roitman_bound_check(space, vectors).satisfied)
