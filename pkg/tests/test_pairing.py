"""Contraction pairing, isotropy verification, and the dimension bound."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import random_t2_horizontal_curve

import troplin as t
from troplin.curve import satisfies_vertex_equations
from troplin.errors import DimensionMismatch, NotADeformation
from troplin.pairing import end_evaluation, wedge_with_last


AREA = t.TropicalForm(2, 2, (1,))


class TestPhiContract:
    def test_tripod_example(self, tripod):
        form = t.phi_contract(tripod, AREA, [{"v": (1, 0)}])
        assert form.values == (0, 1, -1)

    def test_zero_deformation(self, tripod):
        form = t.phi_contract(tripod, AREA, [{"v": (0, 0)}])
        assert form.is_zero()

    def test_circle_witness_in_product(self, t2_witness):
        dxdydt = t.TropicalForm(3, 3, (1,))
        D1 = {v: (1, 0, 0) for v in t2_witness.abstract.vertices}
        D2 = {v: (0, 1, 0) for v in t2_witness.abstract.vertices}
        form = t.phi_contract(t2_witness, dxdydt, [D1, D2])
        assert satisfies_vertex_equations(t2_witness.abstract, form)

    def test_degree_mismatch(self, tripod):
        with pytest.raises(DimensionMismatch):
            t.phi_contract(tripod, AREA, [{"v": (1, 0)}, {"v": (0, 1)}])

    def test_rejects_non_deformation(self, fig1a):
        bad = {"p": (1, 0), "q": (0, 1)}  # breaks the finite-edge condition
        with pytest.raises(NotADeformation):
            t.phi_contract(fig1a, AREA, [bad])

    def test_rejects_non_invariant_form(self, t2_cycle):
        from troplin.errors import FormNotInvariant

        # dy^... on the Klein bottle is not holonomy invariant
        K = t.make_klein(2, 3)
        h = t.witness_two_torsion(K, (Fraction(1, 2), 1))
        dydt = t.TropicalForm(3, 2, (0, 0, 1))
        with pytest.raises(FormNotInvariant):
            t.phi_contract(h, dydt, [{v: (0, 0, 0) for v in h.abstract.vertices}])
        with pytest.raises(FormNotInvariant):
            t.isotropy_check(h, t.TropicalForm(2, 2, (1,)))  # dx^dy not invariant on K

    def test_vertex_equations_always_hold_on_fuzzed_curves(self):
        rng = random.Random(515)
        for _ in range(25):
            h = random_t2_horizontal_curve(rng)
            basis = t.deformation_basis(h)
            if not basis:
                continue
            dxdydt = t.TropicalForm(3, 3, (1,))
            for D1, D2 in combinations(basis, 2):
                form = t.phi_contract(h, dxdydt, [D1, D2])
                assert satisfies_vertex_equations(h.abstract, form)


class TestChartConsistency:
    """The contraction value of an edge is chart-independent: computing at
    the head with deck-transported data gives the tail value (this is the
    well-definedness half of the sheaf-homomorphism statement)."""

    @staticmethod
    def head_chart_value(h, omega, deformations, edge):
        d = h.data(edge.id)
        A = d.deck.matrix()
        n = h.manifold.dim
        transported = [
            sum(A[i, j] * d.direction[j] for j in range(n)) for i in range(n)
        ]
        vecs = [D[edge.head] for D in deformations] + [transported]
        return d.weight * omega.evaluate(vecs)

    def test_torus_wrap_edges(self):
        rng = random.Random(2222)
        omega = wedge_with_last(AREA)
        for _ in range(15):
            h = random_t2_horizontal_curve(rng)
            basis = t.deformation_basis(h)
            for D1, D2 in combinations(basis, 2):
                form = t.phi_contract(h, omega, [D1, D2])
                for e in h.abstract.finite_edges():
                    assert form.value(e.id) == self.head_chart_value(
                        h, omega, [D1, D2], e
                    )

    def test_klein_reflecting_deck(self, klein23):
        """The axis-2 fiber witness crosses a deck element with linear part
        diag(1,-1,1); dx^dt is the invariant 2-form of K x R."""
        h = t.witness_two_torsion(klein23, (Fraction(1, 2), 1))
        ambient_forms = t.invariant_forms(h.manifold, 2)
        assert len(ambient_forms) == 1  # dx^dt survives the reflection
        dxdt = ambient_forms[0]
        assert abs(dxdt.coefficients[1]) == 1 and dxdt.coefficients[0] == 0
        nontrivial = [
            e for e in h.abstract.finite_edges()
            if not h.data(e.id).deck.is_identity()
        ]
        assert nontrivial, "the wrap edge must cross the identification"
        for D in t.deformation_basis(h):
            form = t.phi_contract(h, dxdt, [D])
            for e in h.abstract.finite_edges():
                assert form.value(e.id) == self.head_chart_value(h, dxdt, [D], e)


class TestWedgeWithLast:
    def test_area_becomes_volume(self):
        w = wedge_with_last(AREA)
        assert (w.dim, w.degree) == (3, 3)
        assert w.coefficients == (1,)

    def test_dx_becomes_dx_dt(self):
        dx = t.TropicalForm(2, 1, (1, 0))
        w = wedge_with_last(dx)
        # subsets of {0,1,2} of size 2 in lex order: 01, 02, 12
        assert w.coefficients == (0, 1, 0)


class TestIsotropy:
    def test_t2_circle_witness(self, t2_witness):
        report = t.isotropy_check(t2_witness, AREA)
        assert report.passed
        assert any("vanish" in c.name for c in report.checks)

    def test_vertical_line_identity_case(self, torus4):
        ambient = t.product_with_line(torus4)
        line = t.parametrized_curve(
            ambient,
            t.abstract_curve(
                "v", [("up", "v", None, t.INF), ("dn", "v", None, t.INF)]
            ),
            {"v": (1, 1, 0)},
            {
                "up": dict(direction=(0, 0, 1), weight=1, image_length=t.INF),
                "dn": dict(direction=(0, 0, -1), weight=1, image_length=t.INF),
            },
        )
        report = t.isotropy_check(line, AREA)
        assert report.passed

    def test_klein_vacuous(self, klein23):
        w = t.witness_two_torsion(klein23, (Fraction(1, 2), 1))
        report = t.isotropy_check(w, None, degree=2)
        assert report.passed
        assert any(c.status == "skipped" and "rank 0" in c.detail for c in report.checks)

    def test_degree_below_two_rejected(self, t2_witness):
        with pytest.raises(DimensionMismatch):
            t.isotropy_check(t2_witness, None, degree=1)
        dx = t.TropicalForm(2, 1, (1, 0))
        with pytest.raises(DimensionMismatch):
            t.isotropy_check(t2_witness, dx)

    def test_diagram_identity_on_fuzzed_curves(self):
        """The end evaluation agrees with summing the contraction form over
        the infinite edges (the two routes around the diagram)."""
        rng = random.Random(808)
        for _ in range(25):
            h = random_t2_horizontal_curve(rng)
            basis = t.deformation_basis(h)
            omega = wedge_with_last(AREA)
            infinite = [e.id for e in h.abstract.infinite_edges()]
            for D1, D2 in combinations(basis, 2):
                direct = end_evaluation(h, AREA, [D1, D2])
                pair_form = t.phi_contract(h, omega, [D1, D2])
                via_phi = sum(pair_form.value(eid) for eid in infinite)
                assert direct == via_phi == 0

    def test_fuzzed_isotropy_exact_zero(self):
        rng = random.Random(909)
        for _ in range(30):
            h = random_t2_horizontal_curve(rng)
            report = t.isotropy_check(h, AREA)
            assert report.passed


class TestRoitman:
    def build_four_block_space(self):
        return t.GradedSpace(tuple(t.Block(2, s, AREA) for s in (1, 1, -1, -1)))

    def test_balanced_diagonal(self):
        space = self.build_four_block_space()
        W = [(1, 0, 1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 1, 0, 1)]
        result = t.roitman_bound_check(space, W)
        assert result.isotropic and result.satisfied
        assert (result.dim_W, result.bound) == (2, 4)

    def test_full_block_not_isotropic(self):
        space = self.build_four_block_space()
        W = [(1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0)]
        result = t.roitman_bound_check(space, W)
        assert not result.isotropic and not result.satisfied

    def test_zero_subspace(self):
        space = self.build_four_block_space()
        result = t.roitman_bound_check(space, [])
        assert result.isotropic and result.satisfied and result.dim_W == 0

    def test_dimension_mismatch(self):
        space = self.build_four_block_space()
        with pytest.raises(DimensionMismatch):
            t.roitman_bound_check(space, [(1, 0)])

    def test_infinity_restriction_of_witness(self, t2_witness):
        space, vectors = t.infinity_restriction(t2_witness, AREA)
        assert len(space.blocks) == 4
        assert {b.sign for b in space.blocks} == {1, -1}
        result = t.roitman_bound_check(space, vectors)
        assert result.isotropic and result.satisfied

    def test_fuzzed_curves_link_isotropy_and_bound(self):
        rng = random.Random(321)
        for _ in range(30):
            h = random_t2_horizontal_curve(rng)
            space, vectors = t.infinity_restriction(h, AREA)
            result = t.roitman_bound_check(space, vectors)
            assert result.isotropic
            assert result.satisfied
