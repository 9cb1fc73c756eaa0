"""Relative homology and locally constant 1-forms
==============================================

On a metric graph with rays, two vector spaces coincide inside edge
space: the kernel of the relative boundary map (cycles rel the points at
infinity) and the space of locally constant 1-forms (edge values whose
outward-signed sums vanish at every vertex).  The identification is the
map eta sending a form to the chain weighted by its edge values.
"""

from fractions import Fraction

from troplin import (
    INF,
    abstract_curve,
    eta,
    locally_constant_forms,
    relative_h1_basis,
)

theta = abstract_curve(
    ["p", "q"],
    [("top", "p", "q", 1), ("middle", "p", "q", 1), ("bottom", "p", "q", 2)],
)
print("theta graph (two vertices, three parallel edges):")
print("  relative H1 dimension:", len(relative_h1_basis(theta)))
for form in locally_constant_forms(theta):
    print("  form", form.values, "-> chain", eta(theta, form))

tree = abstract_curve(
    ["a", "b"],
    [
        ("spine", "a", "b", Fraction(5, 2)),
        ("r1", "a", None, INF),
        ("r2", "a", None, INF),
        ("r3", "b", None, INF),
        ("r4", "b", None, INF),
    ],
)
print("\ncaterpillar tree with four rays:")
print("  relative H1 dimension:", len(relative_h1_basis(tree)),
      "(rays minus one, as for any tree)")

# The two computations use different matrices (boundary vs vertex
# equations); their dimensions agreeing on every graph is the content of
# the identification.
line = abstract_curve("v", [("left", "v", None, INF), ("right", "v", None, INF)])
print("\nthe line (one vertex, two rays):")
print("  cycles:", relative_h1_basis(line))
print("  forms: ", [f.values for f in locally_constant_forms(line)])
