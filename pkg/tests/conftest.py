"""Shared fixtures: canonical curves, manifolds, and random generators."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import troplin as t
from troplin.manifold import translation_deck


@pytest.fixture
def euclid2():
    return t.make_euclidean(2)


@pytest.fixture
def torus4():
    return t.make_torus([(4, 0), (0, 4)])


@pytest.fixture
def klein23():
    return t.make_klein(2, 3)


def build_fig1a():
    """The five-edge plane curve with vertices (-1,0) and (0,1)."""
    ambient = t.make_euclidean(2)
    abstract = t.abstract_curve(
        ["p", "q"],
        [
            ("w", "p", None, t.INF),
            ("s", "p", None, t.INF),
            ("pq", "p", "q", 1),
            ("d", "q", None, t.INF),
            ("ne", "q", None, t.INF),
        ],
    )
    return t.parametrized_curve(
        ambient,
        abstract,
        {"p": (-1, 0), "q": (0, 1)},
        {
            "w": dict(direction=(-1, 0), weight=1, image_length=t.INF),
            "s": dict(direction=(0, -1), weight=1, image_length=t.INF),
            "pq": dict(direction=(1, 1), weight=1, image_length=1),
            "d": dict(direction=(0, -1), weight=2, image_length=t.INF),
            "ne": dict(direction=(1, 3), weight=1, image_length=t.INF),
        },
    )


def build_line_r2():
    """A straight line through the origin: one vertex, two opposite rays."""
    return t.parametrized_curve(
        t.make_euclidean(2),
        t.abstract_curve("v", [("e1", "v", None, t.INF), ("e2", "v", None, t.INF)]),
        {"v": (0, 0)},
        {
            "e1": dict(direction=(1, 0), weight=1, image_length=t.INF),
            "e2": dict(direction=(-1, 0), weight=1, image_length=t.INF),
        },
    )


def build_t2_cycle():
    """The horizontal circle y = 0 in the square 4-torus, one self-loop."""
    T = t.make_torus([(4, 0), (0, 4)])
    return t.parametrized_curve(
        T,
        t.abstract_curve("v", [("loop", "v", "v", 4)]),
        {"v": (0, 0)},
        {
            "loop": dict(
                direction=(1, 0), weight=1, image_length=4, deck=translation_deck((-4, 0))
            )
        },
    )


def build_t2_witness():
    """The circle modification in T^2 x R with a weight-2 ray at each end."""
    T = t.make_torus([(4, 0), (0, 4)])
    circle = t.circle_embedding(T, (0, 0), (1, 0), 4, translation_deck((-4, 0)))
    return t.modification_curve(circle, t.principal_function(4, [(0, 2), (2, -2)]))


def build_tripod():
    return t.parametrized_curve(
        t.make_euclidean(2),
        t.abstract_curve(
            "v",
            [("e1", "v", None, t.INF), ("e2", "v", None, t.INF), ("e3", "v", None, t.INF)],
        ),
        {"v": (0, 0)},
        {
            "e1": dict(direction=(1, 0), weight=1, image_length=t.INF),
            "e2": dict(direction=(0, 1), weight=1, image_length=t.INF),
            "e3": dict(direction=(-1, -1), weight=1, image_length=t.INF),
        },
    )


@pytest.fixture
def fig1a():
    return build_fig1a()


@pytest.fixture
def line_r2():
    return build_line_r2()


@pytest.fixture
def t2_cycle():
    return build_t2_cycle()


@pytest.fixture
def t2_witness():
    return build_t2_witness()


@pytest.fixture
def tripod():
    return build_tripod()


# ---------------------------------------------------------------------------
# Seeded random generators (delta-debuggable mass fuzzing)


def random_abstract_curve(rng: random.Random, max_edges: int = 12) -> "t.AbstractTropicalCurve":
    """A random valid metric graph with at most max_edges edges.

    Vertices of valence < 2 are repaired by attaching extra rays, so every
    output passes validation.
    """
    nv = rng.randint(1, 5)
    vertices = [f"v{i}" for i in range(nv)]
    edges = []
    n_finite = rng.randint(0, max(0, max_edges - nv))
    for i in range(n_finite):
        a, b = rng.choice(vertices), rng.choice(vertices)
        length = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        edges.append((f"f{i}", a, b, length))
    n_rays = rng.randint(0, max(0, max_edges - len(edges) - nv))
    for i in range(n_rays):
        edges.append((f"r{i}", rng.choice(vertices), None, t.INF))
    # Repair low-valence vertices with extra rays.
    def valence(v):
        c = 0
        for _, a, b, _ in edges:
            c += a == v
            c += b == v
        return c

    extra = 0
    for v in vertices:
        while valence(v) < 2:
            edges.append((f"x{extra}", v, None, t.INF))
            extra += 1
    return t.abstract_curve(vertices, edges)


PRIMITIVE_DIRECTIONS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, -2)]


def random_t2_horizontal_curve(rng: random.Random, max_vertices: int = 8):
    """A random horizontal curve in T^2 x R built as a circle modification.

    The circle is a closed geodesic of the square 4-torus; the divisor is
    a random principal degree-zero divisor on it (class repaired exactly).
    """
    T = t.make_torus([(4, 0), (0, 4)])
    u = rng.choice(PRIMITIVE_DIRECTIONS)
    c = Fraction(4)  # u primitive: minimal return time in the 4Z x 4Z lattice
    anchor = (Fraction(rng.randint(0, 7), 2), Fraction(rng.randint(0, 7), 2))
    closing = translation_deck((-c * u[0], -c * u[1]))
    circle = t.circle_embedding(T, anchor, u, c, closing)
    npoints = rng.randint(0, max(0, max_vertices - 2))
    divisor = []
    for _ in range(npoints):
        pos = Fraction(rng.randint(0, 15), 4)
        mult = rng.choice([-2, -1, 1, 2])
        divisor.append((pos, mult))
    degree = sum(m for _, m in divisor)
    if degree != 0:
        divisor.append((Fraction(rng.randint(0, 15), 4), -degree))
    klass = t.circle_jacobian_class(c, divisor)
    if klass != 0:
        spot = Fraction(rng.randint(0, 3))
        divisor.append((spot, 1))
        divisor.append((spot + klass, -1))
    f = t.principal_function(c, divisor)
    return t.modification_curve(circle, f)
