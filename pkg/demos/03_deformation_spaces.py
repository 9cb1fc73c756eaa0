"""Deformation spaces of embedded curves
=====================================

Moving the vertices of a curve while keeping every edge direction fixed
is possible exactly when, across each bounded edge, the difference of
the endpoint motions stays parallel to the edge.  The solutions form the
tangent space of the curve's moduli.  Rays impose no condition, so a
single vertex with rays moves freely; cycles in quotients can pin the
directions down to pure translations.
"""

from troplin import INF, deformation_basis, make_torus, parametrized_curve, abstract_curve
from troplin.manifold import translation_deck

import troplin as t

# A straight line in the plane: one vertex, two opposite rays.
line = parametrized_curve(
    t.make_euclidean(2),
    abstract_curve("v", [("l", "v", None, INF), ("r", "v", None, INF)]),
    {"v": (0, 0)},
    {
        "l": dict(direction=(-1, 0), weight=1, image_length=INF),
        "r": dict(direction=(1, 0), weight=1, image_length=INF),
    },
)
print("line in R^2: dimension", len(deformation_basis(line)), "(vertex translations)")

# The horizontal circle in the square 4-torus, parametrized by one
# self-loop: only the two global translations survive.
T = make_torus([(4, 0), (0, 4)])
cycle = parametrized_curve(
    T,
    abstract_curve("v", [("loop", "v", "v", 4)]),
    {"v": (0, 0)},
    {"loop": dict(direction=(1, 0), weight=1, image_length=4,
                  deck=translation_deck((-4, 0)))},
)
print("circle in T^2: dimension", len(deformation_basis(cycle)))

# The same circle lifted to T^2 x R as a modification with two vertical
# weight-2 rays: the two finite edges have independent slopes, forcing
# all vertex motions equal, so only the three translations remain.
circle = t.circle_embedding(T, (0, 0), (1, 0), 4, translation_deck((-4, 0)))
witness = t.modification_curve(circle, t.principal_function(4, [(0, 2), (2, -2)]))
basis = deformation_basis(witness)
print("its lift to T^2 x R: dimension", len(basis))
for i, D in enumerate(basis):
    print(f"  D{i}:", {v: vec for v, vec in sorted(D.items())})
