"""0-cycles on a tropical Klein bottle
===================================

The Klein bottle K glues the plane by a(x,y) = (x, y+y0) and
b(x,y) = (x+x0, -y).  Its points up to rational equivalence are decided
by two numbers: the degree and the x-coordinate sum modulo x0.  The two
relation families behind that decision are realized by explicit
horizontal curves over the coordinate fibers: 2p ~ 2 iota(p) on the long
axis-2 fibers, and p + iota(p) ~ 2 s(theta) on the axis-1 fibers, where
iota reflects y and s is the section theta -> (theta, 0).
"""

from fractions import Fraction

import troplin as t

K = t.make_klein(2, 3)
p = (Fraction(1, 2), 1)

print("fibers through p =", p)
for axis in (1, 2):
    circle = t.fiber_circle(K, axis, p[axis - 1])
    tag = " (special)" if circle.special else ""
    print(f"  axis {axis}: circumference {circle.circumference}{tag}")
print("  special axis-2 fibers sit at y = 0 and y = y0/2:",
      t.fiber_circle(K, 2, 0).circumference,
      t.fiber_circle(K, 2, Fraction(3, 2)).circumference)

print("\ntwo-torsion witness (axis-2 fiber, antipodal divisor):")
w = t.witness_two_torsion(K, p)
print("  boundary:", t.boundary_zero_cycle(w).entries)
print("  validates:", t.validate_parametrized(w).passed,
      "| horizontal:", t.is_horizontal_at_infinity(w))

print("\nfiber relation witness (axis-1 fiber through p):")
w2 = t.witness_fiber_relation(K, p)
print("  boundary:", t.boundary_zero_cycle(w2).entries)
print("  slopes of the defining function were integral; ends:",
      [(e.id, w2.data(e.id).weight) for e in w2.abstract.infinite_edges()])

print("\nthe complete decision:")
zp = t.zero_cycle(K, [(p, 1)])
zi = t.zero_cycle(K, [(t.iota(K, p), 1)])
zq = t.zero_cycle(K, [((p[0] + Fraction(1, 2), p[1]), 1)])
print("  p ~ iota(p):", t.chow_equivalent(K, zp, zi))
print("  p ~ p + (x0/4, 0):", t.chow_equivalent(K, zp, zq))
degree, klass = t.albanese_class(K, zp - zq)
print("  obstruction: degree", degree, "and class", klass, "mod", K.klein_params[0])
