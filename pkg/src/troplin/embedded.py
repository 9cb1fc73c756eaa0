"""Parametrized tropical curves inside a quotient manifold.

A curve is stored as lifted vertex positions in R^n plus, per edge, a
primitive integer direction in the tail's chart, a positive weight, an
image length, and a deck element (identity unless the edge crosses the
quotient identification).  Tangent data is transported across an edge by
the deck's linear part, which keeps balancing and position checks
chart-correct without fundamental-domain case analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .curve import INF, AbstractTropicalCurve, validate_abstract
from .errors import InvalidCurve, NotHorizontal, WrongAmbient
from .linalg import as_fraction, as_int, matrix, vector
from .manifold import (
    KIND_EUCLIDEAN,
    KIND_PRODUCT,
    AffineQuotientManifold,
    DeckElement,
    contains_deck,
    identity_deck,
    reduce_point,
)
from .report import Report


@dataclass(frozen=True)
class EmbeddedEdgeData:
    """Embedding data of one edge, expressed in the tail vertex's chart."""

    direction: tuple[int, ...]
    weight: int
    image_length: object  # positive Fraction, INF for rays
    deck: DeckElement

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(as_int(c) for c in self.direction))
        object.__setattr__(self, "weight", as_int(self.weight))
        if self.image_length == INF or self.image_length == "inf":
            object.__setattr__(self, "image_length", INF)
        else:
            object.__setattr__(self, "image_length", as_fraction(self.image_length))


@dataclass(frozen=True)
class ParametrizedTropicalCurve:
    manifold: AffineQuotientManifold
    abstract: AbstractTropicalCurve
    positions: Mapping[str, tuple]
    edge_data: Mapping[str, EmbeddedEdgeData]

    def __post_init__(self):
        object.__setattr__(
            self, "positions", {str(k): vector(v) for k, v in self.positions.items()}
        )
        object.__setattr__(self, "edge_data", dict(self.edge_data))

    def position(self, vertex_id: str) -> tuple:
        return self.positions[vertex_id]

    def data(self, edge_id: str) -> EmbeddedEdgeData:
        return self.edge_data[edge_id]


def parametrized_curve(
    manifold: AffineQuotientManifold,
    abstract: AbstractTropicalCurve,
    positions: Mapping[str, Sequence],
    edges: Mapping[str, Mapping],
) -> ParametrizedTropicalCurve:
    """Assemble a curve; omitted decks default to the identity."""
    data = {}
    for eid, params in edges.items():
        deck = params.get("deck") or identity_deck(manifold.dim)
        data[eid] = EmbeddedEdgeData(
            tuple(params["direction"]), params.get("weight", 1), params["image_length"], deck
        )
    return ParametrizedTropicalCurve(manifold, abstract, dict(positions), data)


def outward_germs(h: ParametrizedTropicalCurve, v: str) -> list[tuple[str, int, tuple]]:
    """(edge id, weight, primitive outward direction in v's chart) at v."""
    germs = []
    for e in h.abstract.edges:
        d = h.data(e.id)
        if e.tail == v:
            germs.append((e.id, d.weight, d.direction))
        if e.head == v:
            A = d.deck.matrix()
            transported = linalg.mat_vec(A, d.direction)
            germs.append((e.id, d.weight, tuple(-int(c) for c in transported)))
    return germs


def balancing_residual(h: ParametrizedTropicalCurve, v: str) -> tuple:
    """Weighted sum of the outward primitive directions at v (zero iff balanced)."""
    total = [0] * h.manifold.dim
    for _, w, germ in outward_germs(h, v):
        for i, c in enumerate(germ):
            total[i] += w * c
    return tuple(total)


def _edge_segment(h: ParametrizedTropicalCurve, e) -> tuple[tuple, tuple, object]:
    """(start, direction, lattice length or INF) of an edge in the tail chart."""
    d = h.data(e.id)
    return h.position(e.tail), d.direction, d.image_length


def _segment_pair_intersections(p, dp, lp, q, dq, lq):
    """Exact intersection of two closed segments/rays in R^n.

    Returns a list of intersection points when the set is finite, or the
    string ``"overlap"`` when the segments share infinitely many points.
    """
    n = len(p)
    M = matrix([[dp[i], -dq[i]] for i in range(n)])
    rhs = [as_fraction(q[i]) - as_fraction(p[i]) for i in range(n)]
    if linalg.rank(M) == 2:
        sol = linalg.solve_rational(M, rhs)
        if sol is None:
            return []
        s, t = as_fraction(sol[0]), as_fraction(sol[1])
        if s < 0 or (lp is not INF and s > lp) or t < 0 or (lq is not INF and t > lq):
            return []
        return [vector(as_fraction(p[i]) + s * dp[i] for i in range(n))]
    # Parallel directions: either disjoint lines or a shared line.
    sol = linalg.solve_rational(matrix([[dp[i]] for i in range(n)]), rhs)
    if sol is None:
        return []
    s0 = as_fraction(sol[0])  # q = p + s0 dp
    lam = None  # dq = lam dp
    for i in range(n):
        if dp[i] != 0:
            lam = Fraction(dq[i], dp[i])
            break
    lo = s0 if lam > 0 else (s0 + lam * lq if lq is not INF else -INF)
    hi = (s0 + lam * lq if lq is not INF else INF) if lam > 0 else s0
    lo2 = max(Fraction(0), lo) if lo != -INF else Fraction(0)
    hi2 = min(lp, hi) if lp is not INF and hi is not INF else (lp if hi is INF else hi)
    if hi2 is INF:
        if lo2 is INF:
            return []
        return "overlap"
    if lo2 > hi2:
        return []
    if lo2 == hi2:
        return [vector(as_fraction(p[i]) + lo2 * dp[i] for i in range(n))]
    return "overlap"


def validate_parametrized(h: ParametrizedTropicalCurve) -> Report:
    """Run every structural and geometric invariant, collecting violations.

    For euclidean ambients an exact global embeddedness check (pairwise
    segment/ray intersection) runs as well; for quotients, embeddedness
    beyond local injectivity is reported as not checked.
    """
    report = Report("parametrized curve")
    abstract_report = validate_abstract(h.abstract)
    report.add(
        "abstract curve valid", abstract_report.passed,
        "; ".join(c.detail or c.name for c in abstract_report.failures()),
    )
    if not abstract_report.passed:
        return report
    n = h.manifold.dim

    missing = [v for v in h.abstract.vertices if v not in h.positions]
    missing += [e.id for e in h.abstract.edges if e.id not in h.edge_data]
    report.add("embedding data present", not missing, f"missing: {missing}" if missing else "")
    if missing:
        return report

    bad = [
        f"vertex {v}: position has {len(h.position(v))} coordinates"
        for v in h.abstract.vertices
        if len(h.position(v)) != n
    ]
    for e in h.abstract.edges:
        d = h.data(e.id)
        if len(d.direction) != n:
            bad.append(f"{e.id}: dimension mismatch")
            continue
        if all(c == 0 for c in d.direction):
            bad.append(f"{e.id}: zero direction")
        elif linalg.content(d.direction) != 1:
            bad.append(f"{e.id}: direction not primitive")
        if d.weight < 1:
            bad.append(f"{e.id}: weight < 1")
        if e.is_infinite != (d.image_length == INF):
            bad.append(f"{e.id}: finite/infinite mismatch with abstract edge")
        if d.image_length is not INF and d.image_length <= 0:
            bad.append(f"{e.id}: nonpositive image length")
    report.add("edge data well-formed", not bad, "; ".join(bad))
    if bad:
        return report

    unknown = []
    for e in h.abstract.edges:
        member = contains_deck(h.manifold, h.data(e.id).deck)
        if member is False:
            unknown.append(f"{e.id}: deck element not in the group")
    report.add("deck elements belong to the group", not unknown, "; ".join(unknown))

    mismatched = []
    for e in h.abstract.finite_edges():
        d = h.data(e.id)
        end = vector(
            as_fraction(h.position(e.tail)[i]) + d.image_length * d.direction[i]
            for i in range(n)
        )
        if d.deck.apply(end) != h.position(e.head):
            mismatched.append(f"{e.id}: tail + length*direction does not reach head")
    report.add("position consistency", not mismatched, "; ".join(mismatched))

    unbalanced = []
    for v in h.abstract.vertices:
        residual = balancing_residual(h, v)
        if any(c != 0 for c in residual):
            unbalanced.append(f"{v}: residual {residual}")
    report.add("balancing", not unbalanced, "; ".join(unbalanced))

    clashes = []
    for v in h.abstract.vertices:
        germs = outward_germs(h, v)
        for (e1, _, g1), (e2, _, g2) in combinations(germs, 2):
            if g1 == g2:
                clashes.append(f"{v}: edges {e1} and {e2} leave along the same ray")
    report.add("local injectivity", not clashes, "; ".join(clashes))

    if h.manifold.kind == KIND_EUCLIDEAN and report.passed:
        overlaps = []
        edges = list(h.abstract.edges)
        for e, f in combinations(edges, 2):
            pe, de, le = _edge_segment(h, e)
            pf, df, lf = _edge_segment(h, f)
            hits = _segment_pair_intersections(pe, de, le, pf, df, lf)
            if hits == "overlap":
                overlaps.append(f"{e.id} and {f.id} overlap along a segment")
                continue
            shared = {v for v in (e.tail, e.head) if v is not None} & {
                v for v in (f.tail, f.head) if v is not None
            }
            allowed = {h.position(v) for v in shared}
            for pt in hits:
                if pt not in allowed:
                    overlaps.append(f"{e.id} and {f.id} meet at {pt} away from a shared vertex")
        report.add("global embeddedness (euclidean)", not overlaps, "; ".join(overlaps))
    else:
        report.skip(
            "global embeddedness", "not checked beyond local injectivity in quotient ambients"
        )
    return report


def require_valid_parametrized(h: ParametrizedTropicalCurve) -> None:
    report = validate_parametrized(h)
    if not report.passed:
        raise InvalidCurve("; ".join(c.detail or c.name for c in report.failures()))


# ---------------------------------------------------------------------------
# Deformations


def _vertex_offsets(h: ParametrizedTropicalCurve) -> dict[str, int]:
    n = h.manifold.dim
    return {v: i * n for i, v in enumerate(h.abstract.vertices)}


def deformation_constraints(h: ParametrizedTropicalCurve):
    """Linear conditions cutting out the deformation space.

    Unknowns are one tangent vector per vertex.  Each finite edge with
    deck linear part A and direction d contributes: A u_tail - u_head must
    be parallel to A d, encoded by a saturated basis of the annihilator of
    A d.  Semi-infinite edges impose nothing.
    """
    n = h.manifold.dim
    offsets = _vertex_offsets(h)
    ncols = n * len(h.abstract.vertices)
    rows = []
    for e in h.abstract.finite_edges():
        d = h.data(e.id)
        A = d.deck.matrix()
        transported = linalg.mat_vec(A, d.direction)
        for phi in linalg.annihilator_basis(transported):
            row = [0] * ncols
            row_tail = [sum(phi[i] * A[i, j] for i in range(n)) for j in range(n)]
            for j in range(n):
                row[offsets[e.tail] + j] += row_tail[j]
                row[offsets[e.head] + j] -= phi[j]
            rows.append(row)
    if not rows:
        return linalg.zeros(0, ncols)
    return matrix(rows)


def deformation_basis(h: ParametrizedTropicalCurve) -> list[dict[str, tuple]]:
    """Basis of vertex-vector assignments tangent to the moduli of h.

    Edge directions (the discrete data) stay fixed; the returned dimension
    is that of the solution space of the per-edge parallelism conditions.
    """
    require_valid_parametrized(h)
    n = h.manifold.dim
    offsets = _vertex_offsets(h)
    M = deformation_constraints(h)
    basis = linalg.kernel_basis(M, linalg.RING_RATIONALS)
    out = []
    for b in basis:
        out.append({v: vector(b[off : off + n]) for v, off in offsets.items()})
    return out


def is_deformation(h: ParametrizedTropicalCurve, assignment: Mapping[str, Sequence]) -> bool:
    """Whether a vertex assignment satisfies every edge condition of h."""
    n = h.manifold.dim
    offsets = _vertex_offsets(h)
    flat = [Fraction(0)] * (n * len(h.abstract.vertices))
    for v, off in offsets.items():
        vec = vector(assignment[v])
        for j in range(n):
            flat[off + j] = as_fraction(vec[j])
    M = deformation_constraints(h)
    return all(r == 0 for r in linalg.mat_vec(M, flat))


# ---------------------------------------------------------------------------
# Horizontality and evaluation at infinity


def _require_product(h: ParametrizedTropicalCurve) -> AffineQuotientManifold:
    if h.manifold.kind != KIND_PRODUCT or h.manifold.base is None:
        raise WrongAmbient("curve does not live in a product with a line")
    return h.manifold.base


def is_horizontal_at_infinity(h: ParametrizedTropicalCurve) -> bool:
    """True iff every semi-infinite edge runs along the last coordinate."""
    base = _require_product(h)
    last = h.manifold.dim - 1
    for e in h.abstract.infinite_edges():
        d = h.data(e.id).direction
        if any(d[i] != 0 for i in range(last)) or d[last] not in (1, -1):
            return False
    return True


@dataclass(frozen=True)
class ZeroCycle:
    """A finite formal integer combination of canonical manifold points."""

    entries: tuple[tuple[tuple, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, point: Sequence) -> int:
        pt = vector(point)
        for p, m in self.entries:
            if p == pt:
                return m
        return 0

    def is_empty(self) -> bool:
        return not self.entries

    def __neg__(self) -> "ZeroCycle":
        return ZeroCycle(tuple((p, -m) for p, m in self.entries))

    def __add__(self, other: "ZeroCycle") -> "ZeroCycle":
        return _combine(list(self.entries) + list(other.entries))

    def __sub__(self, other: "ZeroCycle") -> "ZeroCycle":
        return self + (-other)


def _combine(items: Iterable[tuple[tuple, int]]) -> ZeroCycle:
    acc: dict[tuple, int] = {}
    for p, m in items:
        acc[p] = acc.get(p, 0) + m
    entries = tuple(sorted((p, m) for p, m in acc.items() if m != 0))
    return ZeroCycle(entries)


def zero_cycle(M: AffineQuotientManifold, items: Iterable[tuple[Sequence, int]]) -> ZeroCycle:
    """Reduce points to canonical representatives, merge, and prune zeros."""
    return _combine((reduce_point(M, p), as_int(m)) for p, m in items)


def evaluate_at_infinity(h: ParametrizedTropicalCurve) -> tuple[ZeroCycle, ZeroCycle]:
    """Base points of the rays going down (minus) and up (plus), with
    multiplicity equal to the edge weight."""
    base = _require_product(h)
    if not is_horizontal_at_infinity(h):
        raise NotHorizontal("curve has a non-vertical semi-infinite edge")
    last = h.manifold.dim - 1
    minus, plus = [], []
    for e in h.abstract.infinite_edges():
        d = h.data(e.id)
        point = h.position(e.tail)[:last]
        if d.direction[last] == -1:
            minus.append((point, d.weight))
        else:
            plus.append((point, d.weight))
    return zero_cycle(base, minus), zero_cycle(base, plus)


def boundary_zero_cycle(h: ParametrizedTropicalCurve) -> ZeroCycle:
    """The 0-cycle (plus ends) - (minus ends); always degree zero."""
    minus, plus = evaluate_at_infinity(h)
    return plus - minus
