"""Tropical affine manifolds presented as quotients of R^n.

A manifold is R^n together with a group of integral affine deck
transformations x -> A x + t, A in GL(n, Z).  Supported presentations are
tagged: ``euclidean`` (trivial group), ``torus`` (pure translations),
``klein`` (the two-generator Klein bottle group with a(x, y) = (x, y + y0)
and b(x, y) = (x + x0, -y)), ``product_with_line`` (an existing quotient
times an untouched R coordinate) and ``general`` (trusted input).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    DegenerateLattice,
    FormNotInvariant,
    NonPositiveParameter,
    UnsupportedManifoldKind,
)
from .linalg import as_fraction, as_int, matrix, vector

KIND_EUCLIDEAN = "euclidean"
KIND_TORUS = "torus"
KIND_KLEIN = "klein"
KIND_PRODUCT = "product_with_line"
KIND_GENERAL = "general"


@dataclass(frozen=True)
class DeckElement:
    """An integral affine transformation x -> A x + t with A unimodular."""

    linear: tuple[tuple[int, ...], ...]
    translation: tuple

    def __post_init__(self):
        A = matrix(self.linear)
        n = len(self.translation)
        if A.shape != (n, n):
            raise ValueError("linear part and translation have mismatched sizes")
        if not linalg.is_unimodular(A):
            raise ValueError("linear part must be an integer matrix with |det| = 1")
        object.__setattr__(self, "linear", tuple(tuple(as_int(e) for e in row) for row in self.linear))
        object.__setattr__(self, "translation", vector(self.translation))

    @property
    def dim(self) -> int:
        return len(self.translation)

    def matrix(self) -> np.ndarray:
        return matrix(self.linear)

    def apply(self, x: Sequence) -> tuple:
        """The image A x + t."""
        x = vector(x)
        A = self.linear
        return vector(
            sum(A[i][j] * x[j] for j in range(self.dim)) + self.translation[i]
            for i in range(self.dim)
        )

    def compose(self, other: "DeckElement") -> "DeckElement":
        """self after other: x -> self(other(x))."""
        A, B = self.matrix(), other.matrix()
        AB = A @ B
        t = vector(
            sum(A[i, j] * other.translation[j] for j in range(self.dim)) + self.translation[i]
            for i in range(self.dim)
        )
        return DeckElement(tuple(tuple(int(e) for e in row) for row in AB), t)

    def inverse(self) -> "DeckElement":
        A = self.matrix()
        n = self.dim
        inv_rows = []
        for i in range(n):
            e_i = [1 if k == i else 0 for k in range(n)]
            col = linalg.solve_rational(A, e_i)
            inv_rows.append(col)
        # solve gives columns of A^-1; assemble and transpose.
        Ainv = tuple(tuple(as_int(inv_rows[j][i]) for j in range(n)) for i in range(n))
        Ainv_m = matrix(Ainv)
        t = vector(-sum(Ainv_m[i, j] * self.translation[j] for j in range(n)) for i in range(n))
        return DeckElement(Ainv, t)

    def is_identity(self) -> bool:
        n = self.dim
        return all(
            self.linear[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        ) and all(t == 0 for t in self.translation)

    def power(self, k: int) -> "DeckElement":
        n = self.dim
        result = identity_deck(n)
        g = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result.compose(g)
        return result


def identity_deck(n: int) -> DeckElement:
    return DeckElement(
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
        tuple([0] * n),
    )


def translation_deck(t: Sequence) -> DeckElement:
    n = len(list(t))
    return DeckElement(
        tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
        vector(t),
    )


@dataclass(frozen=True)
class AffineQuotientManifold:
    dim: int
    generators: tuple[DeckElement, ...]
    names: tuple[str, ...]
    kind: str
    klein_params: tuple | None = None
    base: "AffineQuotientManifold | None" = None

    def __post_init__(self):
        if len(self.generators) != len(self.names):
            raise ValueError("one name per generator")
        for g in self.generators:
            if g.dim != self.dim:
                raise ValueError("generator dimension mismatch")
        if self.kind == KIND_EUCLIDEAN and self.generators:
            raise ValueError("euclidean manifolds have no deck generators")
        if self.kind == KIND_TORUS:
            ident = tuple(
                tuple(1 if i == j else 0 for j in range(self.dim)) for i in range(self.dim)
            )
            if any(g.linear != ident for g in self.generators):
                raise ValueError("torus generators must be pure translations")
            if len(self.generators) != self.dim or linalg.rank(
                matrix([g.translation for g in self.generators])
            ) != self.dim:
                raise DegenerateLattice("torus translations must be a lattice basis")
        if self.kind == KIND_KLEIN:
            if self.klein_params is None or len(self.generators) != 2:
                raise ValueError("klein manifolds carry (x0, y0) and two generators")
            x0, y0 = self.klein_params
            a, b = self.generators
            if (
                a.linear != ((1, 0), (0, 1))
                or tuple(a.translation) != (0, y0)
                or b.linear != ((1, 0), (0, -1))
                or tuple(b.translation) != (x0, 0)
            ):
                raise ValueError(
                    "klein generators must be a: y -> y + y0, b: (x, y) -> (x + x0, -y)"
                )
        if self.kind == KIND_PRODUCT:
            if self.base is None or self.base.dim + 1 != self.dim:
                raise ValueError("product manifolds carry their base, one dimension down")

    def generator(self, name: str) -> DeckElement:
        try:
            return self.generators[self.names.index(name)]
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def deck_from_word(self, word: str) -> DeckElement:
        """Resolve a word like ``"a^-1 b"`` to a deck element.

        The word acts by composition left to right: ``"a b"`` maps x to
        a(b(x)).  Exponents use ``^``, e.g. ``b^-2``.
        """
        result = identity_deck(self.dim)
        for token in word.split():
            if "^" in token:
                name, exp = token.split("^", 1)
                k = int(exp)
            else:
                name, k = token, 1
            result = result.compose(self.generator(name).power(k))
        return result


def make_euclidean(n: int) -> AffineQuotientManifold:
    """R^n with the trivial deck group."""
    if n < 0:
        raise NonPositiveParameter("dimension must be nonnegative")
    return AffineQuotientManifold(n, (), (), KIND_EUCLIDEAN)


def make_torus(lattice: Sequence[Sequence]) -> AffineQuotientManifold:
    """R^n modulo the lattice spanned by the given independent vectors."""
    vecs = [vector(v) for v in lattice]
    if not vecs:
        raise DegenerateLattice("empty lattice")
    n = len(vecs[0])
    if len(vecs) != n or any(len(v) != n for v in vecs):
        raise DegenerateLattice("need n independent vectors of length n")
    if linalg.rank(matrix(vecs)) != n:
        raise DegenerateLattice("lattice vectors are linearly dependent")
    gens = tuple(translation_deck(v) for v in vecs)
    names = tuple(f"t{i + 1}" for i in range(n))
    return AffineQuotientManifold(n, gens, names, KIND_TORUS)


def make_klein(x0, y0) -> AffineQuotientManifold:
    """The tropical Klein bottle with deck group generated by
    a(x, y) = (x, y + y0) and b(x, y) = (x + x0, -y)."""
    x0, y0 = as_fraction(x0), as_fraction(y0)
    if x0 <= 0 or y0 <= 0:
        raise NonPositiveParameter("klein parameters must be positive")
    a = DeckElement(((1, 0), (0, 1)), (0, y0))
    b = DeckElement(((1, 0), (0, -1)), (x0, 0))
    return AffineQuotientManifold(2, (a, b), ("a", "b"), KIND_KLEIN, klein_params=(x0, y0))


def extend_deck(g: DeckElement) -> DeckElement:
    """The same transformation acting trivially on one extra coordinate."""
    n = g.dim
    linear = tuple(tuple(list(row) + [0]) for row in g.linear) + (tuple([0] * n + [1]),)
    return DeckElement(linear, tuple(list(g.translation) + [0]))


def product_with_line(M: AffineQuotientManifold) -> AffineQuotientManifold:
    """M x R: one extra coordinate on which the deck group acts trivially."""
    gens = tuple(extend_deck(g) for g in M.generators)
    return AffineQuotientManifold(
        M.dim + 1, gens, M.names, KIND_PRODUCT, klein_params=M.klein_params, base=M
    )


def apply_deck(g: DeckElement, x: Sequence) -> tuple:
    """The image A x + t of a point under a deck element."""
    return g.apply(x)


# ---------------------------------------------------------------------------
# Integral p-covectors and holonomy-invariant forms


def p_subsets(n: int, p: int) -> list[tuple[int, ...]]:
    """Size-p subsets of range(n) in lexicographic order."""
    return list(combinations(range(n), p))


def _minor(A: np.ndarray, rows: Sequence[int], cols: Sequence[int]):
    if len(rows) == 0:
        return 1
    sub = matrix([[A[i, j] for j in cols] for i in rows])
    return linalg.det(sub)


@dataclass(frozen=True)
class TropicalForm:
    """An integral p-covector on Z^n, indexed by lex-ordered p-subsets."""

    dim: int
    degree: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        expected = len(p_subsets(self.dim, self.degree))
        if len(self.coefficients) != expected:
            raise ValueError(
                f"need {expected} coefficients for degree {self.degree} in dim {self.dim}"
            )
        object.__setattr__(self, "coefficients", tuple(as_int(c) for c in self.coefficients))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def evaluate(self, vectors: Sequence[Sequence]) -> Fraction:
        """The value on degree-many tangent vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} vectors")
        vecs = [vector(v) for v in vectors]
        if any(len(v) != self.dim for v in vecs):
            raise ValueError("vector dimension mismatch")
        cols = matrix([[v[i] for v in vecs] for i in range(self.dim)]) if self.degree else None
        total = Fraction(0)
        for coeff, S in zip(self.coefficients, p_subsets(self.dim, self.degree)):
            if coeff == 0:
                continue
            total += coeff * _minor(cols, list(S), list(range(self.degree)))
        return total

    def pullback(self, A: np.ndarray) -> "TropicalForm":
        """The form w(A ., ..., A .) for an integer matrix A."""
        subsets = p_subsets(self.dim, self.degree)
        coeffs = []
        for S in subsets:
            val = 0
            for c, T in zip(self.coefficients, subsets):
                if c != 0:
                    val += c * _minor(A, list(T), list(S))
            coeffs.append(as_int(val))
        return TropicalForm(self.dim, self.degree, tuple(coeffs))

    def is_invariant(self, M: AffineQuotientManifold) -> bool:
        return all(self.pullback(g.matrix()) == self for g in M.generators)


def invariant_forms(M: AffineQuotientManifold, p: int) -> list[TropicalForm]:
    """Saturated integer basis of the holonomy-fixed p-covectors."""
    if not 0 <= p <= M.dim:
        raise ValueError("degree out of range")
    subsets = p_subsets(M.dim, p)
    k = len(subsets)
    if not M.generators:
        rows = []
    else:
        rows = []
        for g in M.generators:
            A = g.matrix()
            for si, S in enumerate(subsets):
                row = []
                for ti, T in enumerate(subsets):
                    entry = _minor(A, list(T), list(S))
                    if ti == si:
                        entry -= 1
                    row.append(entry)
                rows.append(row)
    if not rows:
        basis = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    else:
        basis = linalg.kernel_basis(matrix(rows), linalg.RING_INTEGERS)
    return [TropicalForm(M.dim, p, tuple(b)) for b in basis]


# ---------------------------------------------------------------------------
# Albanese data


@dataclass(frozen=True)
class AlbaneseData:
    rank: int
    forms: tuple[TropicalForm, ...]
    periods: tuple[tuple, ...]  # one rational vector of length rank per generator


def albanese_data(M: AffineQuotientManifold) -> AlbaneseData:
    """Rank of the invariant 1-forms and the period vector of each generator.

    The period of a generator (A, t) against an invariant 1-form a is the
    value a(t); it is basepoint-free because a(A v) = a(v) for all v.  The
    period lattice is the integer span of the returned vectors; with
    rational data that span is always discrete.
    """
    forms = invariant_forms(M, 1)
    r = len(forms)
    periods = []
    for g in M.generators:
        periods.append(vector(f.evaluate([g.translation]) for f in forms))
    return AlbaneseData(r, tuple(forms), tuple(periods))


# ---------------------------------------------------------------------------
# Canonical representatives


def _floor_div(x: Fraction, step: Fraction) -> int:
    q = as_fraction(x) / as_fraction(step)
    return q.numerator // q.denominator


def reduce_point(M: AffineQuotientManifold, x: Sequence) -> tuple:
    """Canonical fundamental-domain representative of the orbit of x.

    Two points reduce equal iff they lie in the same deck orbit.  Supported
    for euclidean, torus and klein kinds and products of those with a line.
    """
    x = vector(x)
    if len(x) != M.dim:
        raise ValueError("point dimension mismatch")
    if M.kind == KIND_EUCLIDEAN:
        return x
    if M.kind == KIND_TORUS:
        V = matrix([[g.translation[i] for g in M.generators] for i in range(M.dim)])
        c = linalg.solve_rational(V, x)
        frac = [as_fraction(ci) - _floor_div(as_fraction(ci), Fraction(1)) for ci in c]
        return vector(
            sum(V[i, j] * frac[j] for j in range(M.dim)) for i in range(M.dim)
        )
    if M.kind == KIND_KLEIN:
        x0, y0 = M.klein_params
        k = _floor_div(as_fraction(x[0]), x0)
        xb = as_fraction(x[0]) - k * x0
        y = as_fraction(x[1]) if k % 2 == 0 else -as_fraction(x[1])
        yb = y - _floor_div(y, y0) * y0
        return vector([xb, yb])
    if M.kind == KIND_PRODUCT:
        if M.base is None:
            raise UnsupportedManifoldKind("product manifold without base data")
        head = reduce_point(M.base, x[:-1])
        return vector(list(head) + [x[-1]])
    raise UnsupportedManifoldKind(f"no canonical representative for kind {M.kind!r}")


def contains_deck(M: AffineQuotientManifold, g: DeckElement) -> bool | None:
    """Whether g belongs to the deck group; None if undecidable (general kind)."""
    if g.dim != M.dim:
        return False
    if M.kind == KIND_EUCLIDEAN:
        return g.is_identity()
    if M.kind == KIND_TORUS:
        if not g.matrix().tolist() == identity_deck(M.dim).matrix().tolist():
            return False
        V = matrix([[gen.translation[i] for gen in M.generators] for i in range(M.dim)])
        c = linalg.solve_rational(V, g.translation)
        return c is not None and all(as_fraction(ci).denominator == 1 for ci in c)
    if M.kind == KIND_KLEIN:
        x0, y0 = M.klein_params
        A = g.linear
        tx, ty = as_fraction(g.translation[0]), as_fraction(g.translation[1])
        if (tx / x0).denominator != 1 or (ty / y0).denominator != 1:
            return False
        k = int(tx / x0)
        if A == ((1, 0), (0, 1)):
            return k % 2 == 0
        if A == ((1, 0), (0, -1)):
            return k % 2 == 1
        return False
    if M.kind == KIND_PRODUCT:
        n = M.dim
        if g.translation[-1] != 0:
            return False
        for j in range(n - 1):
            if g.linear[n - 1][j] != 0 or g.linear[j][n - 1] != 0:
                return False
        if g.linear[n - 1][n - 1] != 1:
            return False
        head = DeckElement(
            tuple(tuple(row[:-1]) for row in g.linear[:-1]), g.translation[:-1]
        )
        return contains_deck(M.base, head) if M.base is not None else None
    return None


def require_invariant(M: AffineQuotientManifold, form: TropicalForm) -> None:
    if form.dim != M.dim:
        raise FormNotInvariant("form lives on a space of different dimension")
    if not form.is_invariant(M):
        raise FormNotInvariant("form is not fixed by the deck group")
