"""Quotient manifolds: construction, invariant forms, Albanese, reduction."""

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import troplin as t
from troplin.errors import DegenerateLattice, NonPositiveParameter, UnsupportedManifoldKind
from troplin.manifold import contains_deck, identity_deck


class TestConstructors:
    def test_make_klein_generators(self):
        K = t.make_klein(2, 3)
        a, b = K.generators
        assert a.linear == ((1, 0), (0, 1)) and a.translation == (0, 3)
        assert b.linear == ((1, 0), (0, -1)) and b.translation == (2, 0)

    def test_make_klein_unit(self):
        K = t.make_klein(1, 1)
        assert K.generator("a").translation == (0, 1)
        assert K.generator("b").translation == (1, 0)

    def test_make_klein_rejects_nonpositive(self):
        with pytest.raises(NonPositiveParameter):
            t.make_klein(0, 1)

    def test_make_torus(self):
        T = t.make_torus([(4, 0), (0, 4)])
        assert [g.translation for g in T.generators] == [(4, 0), (0, 4)]
        with pytest.raises(DegenerateLattice):
            t.make_torus([(1, 0), (2, 0)])

    def test_make_euclidean(self):
        assert t.make_euclidean(2).generators == ()

    def test_product_with_line(self):
        P = t.product_with_line(t.make_klein(2, 3))
        assert P.dim == 3
        for g in P.generators:
            assert g.linear[2] == (0, 0, 1)
            assert g.linear[0][2] == g.linear[1][2] == 0
            assert g.translation[2] == 0


class TestApplyDeck:
    def test_b_moves_point(self):
        K = t.make_klein(2, 3)
        assert t.apply_deck(K.generator("b"), (Fraction(1, 2), 1)) == (Fraction(5, 2), -1)

    def test_identity(self):
        assert t.apply_deck(identity_deck(2), (Fraction(7, 3), -2)) == (Fraction(7, 3), -2)

    def test_composition(self):
        K = t.make_klein(2, 3)
        aa = K.generator("a").compose(K.generator("a"))
        assert aa.apply((0, 0)) == (0, 6)

    def test_inverse(self):
        K = t.make_klein(2, 3)
        for g in K.generators:
            assert g.compose(g.inverse()).is_identity()
            assert g.inverse().compose(g).is_identity()


class TestInvariantForms:
    def test_klein_degree_one_is_dx(self):
        basis = t.invariant_forms(t.make_klein(2, 3), 1)
        assert len(basis) == 1
        assert basis[0].coefficients in ((1, 0), (-1, 0))

    def test_klein_degree_two_vanishes(self):
        assert t.invariant_forms(t.make_klein(2, 3), 2) == []

    def test_torus_full_rank(self):
        T = t.make_torus([(4, 0), (0, 4)])
        for p in range(3):
            assert len(t.invariant_forms(T, p)) == comb(2, p)

    def test_invariance_is_exact(self):
        K = t.make_klein(5, 7)
        for p in (0, 1, 2):
            for form in t.invariant_forms(K, p):
                for g in K.generators:
                    assert form.pullback(g.matrix()) == form

    def test_fixed_space_is_saturated(self):
        # A = [[1,2],[0,-1]] fixes exactly the covectors proportional to
        # (1,1); a non-saturated computation would return a multiple.
        M = t.AffineQuotientManifold(
            2, (t.DeckElement(((1, 2), (0, -1)), (0, 0)),), ("g",), "general"
        )
        basis = t.invariant_forms(M, 1)
        assert len(basis) == 1
        assert basis[0].coefficients in ((1, 1), (-1, -1))

    def test_deck_element_rejects_non_unimodular(self):
        with pytest.raises(ValueError):
            t.DeckElement(((2, 0), (0, 1)), (0, 0))
        with pytest.raises(ValueError):
            t.DeckElement(((1, 0),), (0, 0))


class TestKindInvariants:
    def test_euclidean_rejects_generators(self):
        from troplin.manifold import translation_deck

        with pytest.raises(ValueError):
            t.AffineQuotientManifold(2, (translation_deck((1, 0)),), ("g",), "euclidean")

    def test_torus_rejects_non_translations(self):
        flip = t.DeckElement(((1, 0), (0, -1)), (1, 0))
        with pytest.raises(ValueError):
            t.AffineQuotientManifold(2, (flip, flip), ("g1", "g2"), "torus")

    def test_torus_rejects_dependent_translations(self):
        from troplin.manifold import translation_deck

        gens = (translation_deck((2, 0)), translation_deck((4, 0)))
        with pytest.raises(DegenerateLattice):
            t.AffineQuotientManifold(2, gens, ("g1", "g2"), "torus")

    def test_klein_rejects_wrong_generators(self):
        K = t.make_klein(2, 3)
        with pytest.raises(ValueError):
            t.AffineQuotientManifold(
                2, (K.generators[1], K.generators[0]), ("a", "b"), "klein",
                klein_params=K.klein_params,
            )

    def test_product_requires_base(self):
        from troplin.manifold import translation_deck

        with pytest.raises(ValueError):
            t.AffineQuotientManifold(
                3, (translation_deck((1, 0, 0)),), ("g",), "product_with_line"
            )


class TestAlbanese:
    def test_klein(self):
        alb = t.albanese_data(t.make_klein(2, 3))
        assert alb.rank == 1
        assert alb.periods == ((0,), (2,))

    def test_euclidean(self):
        alb = t.albanese_data(t.make_euclidean(2))
        assert alb.rank == 2 and alb.periods == ()

    def test_circle(self):
        alb = t.albanese_data(t.make_torus([(1,)]))
        assert alb.rank == 1 and alb.periods == ((1,),)

    def test_periods_are_basepoint_free(self):
        """alpha((A - I) v) = 0 for every invariant alpha and generator."""
        for M in (t.make_klein(2, 3), t.make_torus([(4, 0), (0, 4)])):
            alb = t.albanese_data(M)
            for g in M.generators:
                A = g.matrix()
                for form in alb.forms:
                    for v in ((1, 0), (0, 1), (3, -2)):
                        Av = [sum(A[i, j] * v[j] for j in range(2)) for i in range(2)]
                        moved = [Av[i] - v[i] for i in range(2)]
                        assert form.evaluate([moved]) == 0


class TestReducePoint:
    def test_klein_example(self):
        K = t.make_klein(2, 3)
        assert t.reduce_point(K, (Fraction(5, 2), -1)) == (Fraction(1, 2), 1)

    def test_torus_example(self):
        T = t.make_torus([(4, 0), (0, 4)])
        assert t.reduce_point(T, (5, -1)) == (1, 3)

    def test_euclidean_identity(self):
        E = t.make_euclidean(2)
        assert t.reduce_point(E, (Fraction(9, 7), -3)) == (Fraction(9, 7), -3)

    def test_general_unsupported(self):
        M = t.AffineQuotientManifold(2, (), (), "general")
        with pytest.raises(UnsupportedManifoldKind):
            t.reduce_point(M, (0, 0))

    @given(
        st.integers(-20, 20), st.integers(1, 9),
        st.integers(-20, 20), st.integers(1, 9),
        st.sampled_from(["a", "b", "a b", "b^-1", "a^-1 b^2", "b a b"]),
    )
    @settings(max_examples=150, deadline=None)
    def test_idempotent_and_deck_invariant(self, xn, xd, yn, yd, word):
        K = t.make_klein(2, 3)
        x = (Fraction(xn, xd), Fraction(yn, yd))
        reduced = t.reduce_point(K, x)
        assert t.reduce_point(K, reduced) == reduced
        assert 0 <= reduced[0] < 2 and 0 <= reduced[1] < 3
        g = K.deck_from_word(word)
        assert t.reduce_point(K, t.apply_deck(g, x)) == reduced

    def test_product_reduces_base_only(self):
        P = t.product_with_line(t.make_klein(2, 3))
        assert t.reduce_point(P, (Fraction(5, 2), -1, Fraction(9, 5))) == (
            Fraction(1, 2), 1, Fraction(9, 5),
        )

    @given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-3, 3), st.integers(-3, 3))
    @settings(max_examples=100, deadline=None)
    def test_skew_torus_orbit_invariance(self, xn, yn, k1, k2):
        T = t.make_torus([(2, 1), (0, 3)])
        x = (Fraction(xn, 2), Fraction(yn, 2))
        shifted = (x[0] + 2 * k1, x[1] + k1 + 3 * k2)
        assert t.reduce_point(T, shifted) == t.reduce_point(T, x)


class TestDeckMembership:
    def test_klein_words_belong(self):
        K = t.make_klein(2, 3)
        rng = random.Random(7)
        for _ in range(20):
            word = " ".join(
                f"{rng.choice('ab')}^{rng.randint(-2, 2)}" for _ in range(rng.randint(1, 4))
            )
            assert contains_deck(K, K.deck_from_word(word)) is True

    def test_klein_rejects_wrong_translation(self):
        K = t.make_klein(2, 3)
        g = t.DeckElement(((1, 0), (0, 1)), (Fraction(1), Fraction(0)))
        assert contains_deck(K, g) is False

    def test_torus_membership(self):
        T = t.make_torus([(4, 0), (0, 4)])
        from troplin.manifold import translation_deck

        assert contains_deck(T, translation_deck((8, -4))) is True
        assert contains_deck(T, translation_deck((2, 0))) is False
