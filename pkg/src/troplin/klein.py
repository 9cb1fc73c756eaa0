"""0-cycles on tropical Klein bottles: decision procedure and witnesses.

The Klein bottle K has deck group generated by a(x, y) = (x, y + y0) and
b(x, y) = (x + x0, -y).  Both coordinate projections fiber K by circles;
divisors on those circles are handled by the circle Abel-Jacobi map, and
principal divisors are realized as explicit horizontal curves in K x R
(a graph of a piecewise linear function plus vertical balancing rays).
Degree and the class of the invariant covector dx modulo x0 decide
rational equivalence completely; the witness constructors realize the two
relation families behind that decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import INF, abstract_curve
from .embedded import (
    ParametrizedTropicalCurve,
    ZeroCycle,
    boundary_zero_cycle,
    is_horizontal_at_infinity,
    parametrized_curve,
    require_valid_parametrized,
    zero_cycle,
)
from .errors import (
    InvalidCurve,
    NonZeroDegree,
    NotPrincipal,
    OnSection,
    SpecialFiber,
    UnsupportedManifoldKind,
)
from .linalg import as_fraction, as_int, mat_vec, vector
from .manifold import (
    KIND_KLEIN,
    AffineQuotientManifold,
    DeckElement,
    extend_deck,
    product_with_line,
    reduce_point,
)


def _require_klein(K: AffineQuotientManifold) -> tuple[Fraction, Fraction]:
    if K.kind != KIND_KLEIN or K.klein_params is None:
        raise UnsupportedManifoldKind("operation needs a klein-kind manifold")
    return K.klein_params


def iota(K: AffineQuotientManifold, p: Sequence) -> tuple:
    """The reflection (x, y) -> (x, -y), as a canonical representative."""
    _require_klein(K)
    p = vector(p)
    return reduce_point(K, (p[0], -as_fraction(p[1])))


def section_point(K: AffineQuotientManifold, theta) -> tuple:
    """The point s(theta) = (theta, 0) of the section of the first projection."""
    _require_klein(K)
    return reduce_point(K, (theta, 0))


def _mod(t, c: Fraction) -> Fraction:
    t = as_fraction(t)
    q = (t / c).numerator // (t / c).denominator
    return t - q * c


@dataclass(frozen=True)
class FiberCircle:
    """A fiber of one of the coordinate projections, as an embedded circle.

    Travelling ``circumference`` from the ``anchor`` lift along
    ``direction`` returns to the anchor through the ``closing`` deck
    element; ``special`` marks the short axis-2 fibers at y = 0 and
    y = y0/2, which the reflection fixes.
    """

    manifold: AffineQuotientManifold
    circumference: Fraction
    anchor: tuple
    direction: tuple[int, ...]
    closing: DeckElement
    axis: int | None = None
    special: bool = False

    def __post_init__(self):
        object.__setattr__(self, "circumference", as_fraction(self.circumference))
        object.__setattr__(self, "anchor", vector(self.anchor))
        object.__setattr__(self, "direction", tuple(as_int(c) for c in self.direction))
        end = vector(
            as_fraction(self.anchor[i]) + self.circumference * self.direction[i]
            for i in range(len(self.anchor))
        )
        if self.closing.apply(end) != self.anchor:
            raise ValueError("closing deck element does not return the circle to its anchor")
        A = self.closing.matrix()
        if tuple(mat_vec(A, self.direction)) != self.direction:
            raise ValueError("closing deck element does not preserve the travel direction")

    def point_at(self, t) -> tuple:
        """Canonical representative of the circle point at parameter t."""
        t = _mod(t, self.circumference)
        lift = vector(
            as_fraction(self.anchor[i]) + t * self.direction[i]
            for i in range(len(self.anchor))
        )
        return reduce_point(self.manifold, lift)


def circle_embedding(
    manifold: AffineQuotientManifold,
    anchor: Sequence,
    direction: Sequence[int],
    circumference,
    closing: DeckElement,
) -> FiberCircle:
    """Embedding data for an arbitrary affinely embedded circle."""
    return FiberCircle(manifold, as_fraction(circumference), vector(anchor),
                       tuple(direction), closing, axis=None, special=False)


def fiber_circle(K: AffineQuotientManifold, axis: int, value) -> FiberCircle:
    """The fiber of the axis-th coordinate projection through the given value.

    Axis 1 fibers have circumference y0.  Axis 2 fibers have circumference
    2*x0 generically and x0 over y = 0 and y = y0/2, where the deck element
    b identifies antipodes of the long circle.
    """
    x0, y0 = _require_klein(K)
    if axis == 1:
        theta = reduce_point(K, (value, 0))[0]
        closing = K.deck_from_word("a^-1")
        return FiberCircle(K, y0, (theta, 0), (0, 1), closing, axis=1)
    if axis == 2:
        y = reduce_point(K, (0, value))[1]
        if y == 0 or y == y0 / 2:
            word = "b^-1" if y == 0 else "b^-1 a^-1"
            return FiberCircle(K, x0, (0, y), (1, 0), K.deck_from_word(word), axis=2, special=True)
        return FiberCircle(K, 2 * x0, (0, y), (1, 0), K.deck_from_word("b^-2"), axis=2)
    raise ValueError("axis must be 1 or 2")


def fiber_position(circle: FiberCircle, p: Sequence) -> Fraction:
    """Parameter t in [0, circumference) with circle.point_at(t) = p.

    The travel coordinate pins t up to the quotient identifications, so
    the finitely many shifted candidates are tested exactly; embedded
    circles have exactly one match.
    """
    target = reduce_point(circle.manifold, p)
    c = circle.circumference
    for i, d in enumerate(circle.direction):
        if d != 0:
            t0 = (as_fraction(target[i]) - as_fraction(circle.anchor[i])) / d
            break
    for k in range(8):
        t = _mod(t0 + Fraction(k, 8) * c, c)
        if circle.point_at(t) == target:
            return t
    raise ValueError("point does not lie on the circle")


# ---------------------------------------------------------------------------
# Divisors on a circle


def _normalize_divisor(c: Fraction, divisor: Sequence[tuple]) -> list[tuple[Fraction, int]]:
    acc: dict[Fraction, int] = {}
    for t, m in divisor:
        key = _mod(t, c)
        acc[key] = acc.get(key, 0) + as_int(m)
    return sorted((t, m) for t, m in acc.items() if m != 0)


def circle_jacobian_class(c, divisor: Sequence[tuple]) -> Fraction:
    """Sum of m_i * t_i modulo the circumference, for degree-zero divisors."""
    c = as_fraction(c)
    items = _normalize_divisor(c, divisor)
    if sum(m for _, m in items) != 0:
        raise NonZeroDegree("divisor must have degree zero")
    return _mod(sum(m * t for t, m in items), c)


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Continuous piecewise linear function on a circle with integer slopes.

    ``slopes[i]`` rules the arc from ``breakpoints[i]`` to the next
    breakpoint (cyclically); ``values[i]`` is the value at breakpoint i and
    the first value is normalized to zero.  The slope change at each
    breakpoint is a nonzero integer and all changes sum to zero.
    """

    circumference: Fraction
    breakpoints: tuple
    values: tuple
    slopes: tuple[int, ...]

    def __post_init__(self):
        c = as_fraction(self.circumference)
        object.__setattr__(self, "circumference", c)
        bps = tuple(as_fraction(t) for t in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vector(self.values))
        object.__setattr__(self, "slopes", tuple(as_int(s) for s in self.slopes))
        if list(bps) != sorted(set(bps)) or any(t < 0 or t >= c for t in bps):
            raise ValueError("breakpoints must be strictly sorted inside [0, c)")
        if len(self.values) != len(bps) or len(self.slopes) != len(bps):
            raise ValueError("need one value and one outgoing slope per breakpoint")
        if bps:
            rise = Fraction(0)
            for i in range(len(bps)):
                nxt = bps[(i + 1) % len(bps)] + (c if i == len(bps) - 1 else 0)
                segment = self.slopes[i] * (nxt - bps[i])
                if i + 1 < len(bps) and self.values[i] + segment != self.values[i + 1]:
                    raise ValueError("values do not follow the slopes")
                rise += segment
            if rise != 0:
                raise ValueError("function does not close up around the circle")
            for t, m in zip(bps, self.slope_changes()):
                if m == 0:
                    raise ValueError(f"zero slope change at breakpoint {t}")

    def slope_changes(self) -> tuple[int, ...]:
        k = len(self.breakpoints)
        return tuple(self.slopes[i] - self.slopes[i - 1] for i in range(k))

    def divisor(self) -> list[tuple[Fraction, int]]:
        return list(zip(self.breakpoints, self.slope_changes()))

    def evaluate(self, t) -> Fraction:
        if not self.breakpoints:
            return Fraction(0)
        t = _mod(t, self.circumference)
        k = len(self.breakpoints)
        i = max((j for j in range(k) if self.breakpoints[j] <= t), default=k - 1)
        if self.breakpoints[0] > t:  # before the first breakpoint: wrap segment
            i = k - 1
            return as_fraction(self.values[i]) + self.slopes[i] * (
                t + self.circumference - self.breakpoints[i]
            )
        return as_fraction(self.values[i]) + self.slopes[i] * (t - self.breakpoints[i])


def principal_function(c, divisor: Sequence[tuple]) -> PiecewiseLinearFunction:
    """The function whose slope-change divisor is the given one.

    Exists iff the divisor has degree zero and vanishing Jacobian class;
    unique up to a constant, normalized to vanish at the first breakpoint.
    """
    c = as_fraction(c)
    items = _normalize_divisor(c, divisor)
    if sum(m for _, m in items) != 0:
        raise NonZeroDegree("divisor must have degree zero")
    if not items:
        return PiecewiseLinearFunction(c, (), (), ())
    klass = _mod(sum(m * t for t, m in items), c)
    if klass != 0:
        raise NotPrincipal(f"jacobian class {klass} is nonzero modulo {c}")
    bps = [t for t, _ in items]
    mults = [m for _, m in items]
    cumulative = []
    run = 0
    for m in mults:
        run += m
        cumulative.append(run)
    sigma = sum(m * t for t, m in items) / c  # integral because the class vanishes
    slopes = [as_int(sigma + ci) for ci in cumulative]
    values = [Fraction(0)]
    for i in range(len(bps) - 1):
        values.append(values[-1] + slopes[i] * (bps[i + 1] - bps[i]))
    return PiecewiseLinearFunction(c, tuple(bps), tuple(values), tuple(slopes))


# ---------------------------------------------------------------------------
# Modifications: the graph of a function plus vertical rays


def modification_curve(
    circle: FiberCircle, f: PiecewiseLinearFunction
) -> ParametrizedTropicalCurve:
    """The tropical curve in B x R over an embedded circle determined by f.

    Finite edges follow the graph of f; each breakpoint with slope change
    m carries a vertical ray of weight |m| toward -infinity when m > 0 and
    +infinity when m < 0.  The result is validated before being returned,
    and its boundary cycle is checked against the pushed-forward divisor.
    """
    if f.circumference != circle.circumference:
        raise ValueError("function and circle have different circumferences")
    B = circle.manifold
    ambient = product_with_line(B)
    n = B.dim
    u = circle.direction
    if not f.breakpoints:
        vertices = ["v0"]
        positions = {"v0": tuple(list(circle.anchor) + [0])}
        edges_abs = [("loop", "v0", "v0", circle.circumference)]
        edges_emb = {
            "loop": {
                "direction": tuple(list(u) + [0]),
                "weight": 1,
                "image_length": circle.circumference,
                "deck": extend_deck(circle.closing),
            }
        }
    else:
        k = len(f.breakpoints)
        vertices = [f"v{i}" for i in range(k)]
        positions = {}
        for i, t in enumerate(f.breakpoints):
            pos = [as_fraction(circle.anchor[j]) + t * u[j] for j in range(n)]
            positions[f"v{i}"] = tuple(pos + [as_fraction(f.values[i])])
        edges_abs = []
        edges_emb = {}
        for i in range(k):
            nxt = (i + 1) % k
            t_here = f.breakpoints[i]
            t_next = f.breakpoints[nxt] + (f.circumference if nxt == 0 else 0)
            length = t_next - t_here
            eid = f"arc{i}"
            edges_abs.append((eid, f"v{i}", f"v{nxt}", length))
            deck = extend_deck(circle.closing) if nxt == 0 else None
            edges_emb[eid] = {
                "direction": tuple(list(u) + [f.slopes[i]]),
                "weight": 1,
                "image_length": length,
                "deck": deck,
            }
        for i, m in enumerate(f.slope_changes()):
            eid = f"ray{i}"
            edges_abs.append((eid, f"v{i}", None, INF))
            edges_emb[eid] = {
                "direction": tuple([0] * n + [-1 if m > 0 else 1]),
                "weight": abs(m),
                "image_length": INF,
                "deck": None,
            }
    h = parametrized_curve(
        ambient,
        abstract_curve(vertices, edges_abs),
        positions,
        edges_emb,
    )
    require_valid_parametrized(h)
    if not is_horizontal_at_infinity(h):
        raise InvalidCurve("modification produced a non-horizontal curve")
    expected = zero_cycle(
        B,
        [(circle.point_at(t), -m) for t, m in f.divisor()],
    )
    if boundary_zero_cycle(h) != expected:
        raise InvalidCurve("modification boundary does not match the divisor")
    return h


# ---------------------------------------------------------------------------
# The Albanese class and the equivalence decision


def albanese_class(K: AffineQuotientManifold, z: ZeroCycle) -> tuple[int, Fraction]:
    """Degree and the integral of dx against z, modulo the period x0."""
    x0, _ = _require_klein(K)
    total = Fraction(0)
    for p, m in z.entries:
        total += m * as_fraction(p[0])
    return z.degree, _mod(total, x0)


def chow_equivalent(K: AffineQuotientManifold, z1: ZeroCycle, z2: ZeroCycle) -> bool:
    """Complete decision: equal degree and equal Albanese class."""
    d1, c1 = albanese_class(K, z1)
    d2, c2 = albanese_class(K, z2)
    return d1 == d2 and c1 == c2


# ---------------------------------------------------------------------------
# Witness curves for the two relation families


def witness_two_torsion(
    K: AffineQuotientManifold, p: Sequence
) -> ParametrizedTropicalCurve:
    """A horizontal curve in K x R with boundary 2[iota(p)] - 2[p].

    Built on the axis-2 fiber through p, where p and iota(p) sit at
    antipodal positions of a circle of circumference 2*x0.  Refused on the
    special fibers, where iota fixes p and the relation degenerates.
    """
    x0, y0 = _require_klein(K)
    p = reduce_point(K, p)
    circle = fiber_circle(K, 2, p[1])
    if circle.special:
        raise SpecialFiber("two-torsion witness needs a generic axis-2 fiber")
    t_p = fiber_position(circle, p)
    divisor = [(t_p, 2), (t_p + x0, -2)]
    f = principal_function(circle.circumference, divisor)
    h = modification_curve(circle, f)
    expected = zero_cycle(K, [(iota(K, p), 2), (p, -2)])
    if boundary_zero_cycle(h) != expected:
        raise InvalidCurve("two-torsion witness has the wrong boundary")
    return h


def witness_fiber_relation(
    K: AffineQuotientManifold, p: Sequence
) -> ParametrizedTropicalCurve:
    """A horizontal curve in K x R with boundary 2[s(theta)] - [p] - [iota(p)].

    Built on the axis-1 fiber through p (circumference y0) from the
    divisor +1 at p, +1 at iota(p), -2 at the section point; its Jacobian
    class vanishes identically because iota negates the fiber coordinate.
    """
    x0, y0 = _require_klein(K)
    p = reduce_point(K, p)
    if p[1] == 0:
        raise OnSection("point lies on the image of the section")
    theta = p[0]
    circle = fiber_circle(K, 1, theta)
    divisor = [(as_fraction(p[1]), 1), (-as_fraction(p[1]), 1), (Fraction(0), -2)]
    f = principal_function(circle.circumference, divisor)
    h = modification_curve(circle, f)
    expected = zero_cycle(
        K, [(section_point(K, theta), 2), (p, -1), (iota(K, p), -1)]
    )
    if boundary_zero_cycle(h) != expected:
        raise InvalidCurve("fiber-relation witness has the wrong boundary")
    return h
