from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st

from gallery.generators import minimal_dominant_gallery, random_corpus
from gallery.models import CombinatorialGallery, Face, ViolationKind
from gallery.services import gallery_type, is_valid, weight
from root_geometry.services import build_root_system

from .exceptions import BudgetExceeded, NotOriginBased, NotSimpleRoot, OperatorUndefined
from .models import Case, Operator, OperatorIndices
from .orbits import crystal_operators, highest_element, lowering_operators, lowest_element, orbit, weyl_dimension
from .services import (
    apply_operator,
    block_strip_violations,
    e_alpha,
    e_tilde_alpha,
    epsilon,
    f_alpha,
    operator_indices,
    phi,
    reflection_normal_form,
    require_indices,
    simple_root,
    try_operator,
)


def a1_gallery(panels, alcoves):
    return CombinatorialGallery(
        tuple(Face(((p,),)) for p in panels),
        tuple(Face(((a,), (b,))) for a, b in alcoves),
    )


# 0 < [0,1] > 1 < [1,2] > 2
DOMINANT = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])
# bounce off H_{alpha,-1}
FOLDED = a1_gallery([0, -1, 0], [(-1, 0), (-1, 0)])
LOWEST = a1_gallery([0, -1, -2], [(-1, 0), (-2, -1)])
# starts below H_{alpha,0} and crosses back
REFLECTABLE = a1_gallery([0, 0, 1], [(-1, 0), (0, 1)])
# valid, but ends in its alcove instead of a vertex
OPEN_END = CombinatorialGallery((Face(((0,),)), Face(((0,), (1,)))), (Face(((0,), (1,))),))


class OperatorIndexTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_f_indices(self):
        indices = operator_indices(self.rs, DOMINANT, 1, Operator.F)
        self.assertEqual((indices.case, indices.m, indices.j, indices.k), (Case.LOWERING, 0, 0, 1))

    def test_e_indices(self):
        indices = operator_indices(self.rs, FOLDED, 1, Operator.E)
        self.assertEqual((indices.case, indices.m, indices.j, indices.k), (Case.RAISING, -1, 0, 1))
        self.assertEqual(indices.operator, Operator.E)

    def test_e_undefined_on_dominant_gallery(self):
        """Test that the reason names the failing case condition"""
        self.assertIsNone(operator_indices(self.rs, DOMINANT, 1, Operator.E))
        with self.assertRaisesMessage(OperatorUndefined, 'case (I) requires m <= -1'):
            require_indices(self.rs, DOMINANT, 1, Operator.E)

    def test_e_indices_on_lowest_gallery(self):
        indices = operator_indices(self.rs, LOWEST, 1, Operator.E)
        self.assertEqual((indices.case, indices.m, indices.j, indices.k), (Case.RAISING, -2, 1, 2))

    def test_f_undefined_without_vertex_endpoint(self):
        self.assertTrue(is_valid(self.rs, OPEN_END))
        self.assertIsNone(operator_indices(self.rs, OPEN_END, 1, Operator.F))
        self.assertIsNone(try_operator(self.rs, OPEN_END, 1, Operator.F))
        with self.assertRaisesMessage(OperatorUndefined, 'case (II) requires the gallery to end in a vertex'):
            require_indices(self.rs, OPEN_END, 1, Operator.F)

    def test_f_undefined_on_lowest_gallery(self):
        with self.assertRaisesMessage(OperatorUndefined, 'case (II)'):
            require_indices(self.rs, LOWEST, 1, Operator.F)

    def test_etilde_undefined_without_crossing(self):
        with self.assertRaisesMessage(OperatorUndefined, 'case (III)'):
            require_indices(self.rs, DOMINANT, 1, Operator.E_TILDE)

    def test_simple_root_checks(self):
        rs = build_root_system('A2')
        self.assertEqual(simple_root(rs, 2), (0, 1))
        self.assertEqual(simple_root(rs, (1, 0)), (1, 0))
        with self.assertRaises(NotSimpleRoot):
            simple_root(rs, (1, 1))
        with self.assertRaises(NotSimpleRoot):
            simple_root(rs, 3)

    def test_operators_need_origin_start(self):
        shifted = a1_gallery([2, 3, 4], [(2, 3), (3, 4)])
        with self.assertRaises(NotOriginBased):
            operator_indices(self.rs, shifted, 1, Operator.F)


class A1OperatorTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_f_folds_the_dominant_gallery(self):
        self.assertEqual(f_alpha(self.rs, DOMINANT, 1), FOLDED)
        self.assertEqual(f_alpha(self.rs, FOLDED, 1), LOWEST)

    def test_e_is_inverse_to_f(self):
        self.assertEqual(e_alpha(self.rs, FOLDED, 1), DOMINANT)
        self.assertEqual(e_alpha(self.rs, LOWEST, 1), FOLDED)

    def test_weight_laws(self):
        self.assertEqual(weight(f_alpha(self.rs, DOMINANT, 1)), (0,))
        self.assertEqual(weight(e_alpha(self.rs, FOLDED, 1)), (2,))

    def test_etilde_reflects_the_block(self):
        image = e_tilde_alpha(self.rs, REFLECTABLE, 1)
        self.assertEqual(image, a1_gallery([0, 0, 1], [(0, 1), (0, 1)]))
        self.assertEqual(weight(image), weight(REFLECTABLE))

    def test_string_lengths(self):
        self.assertEqual(phi(self.rs, DOMINANT, 1), 2)
        self.assertEqual(epsilon(self.rs, DOMINANT, 1), 0)
        self.assertEqual(epsilon(self.rs, LOWEST, 1), 2)

    def test_try_operator(self):
        self.assertIsNone(try_operator(self.rs, DOMINANT, 1, Operator.E))
        self.assertEqual(try_operator(self.rs, DOMINANT, 1, Operator.F), FOLDED)


class BlockStripTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_a1_blocks(self):
        for gallery, operator in ((FOLDED, Operator.E), (LOWEST, Operator.E), (DOMINANT, Operator.F)):
            indices = require_indices(self.rs, gallery, 1, operator)
            with self.subTest(gallery=str(gallery), operator=operator):
                self.assertEqual(block_strip_violations(gallery, indices), [])

    def test_block_outside_the_strip(self):
        """Test that alcoves off the strip between H_{alpha,m} and H_{alpha,m+1} are named"""
        self.assertEqual(block_strip_violations(FOLDED, OperatorIndices(Case.RAISING, (1,), 0, 0, 1)), [0])
        indices = require_indices(self.rs, LOWEST, 1, Operator.E)
        self.assertEqual(block_strip_violations(LOWEST, replace(indices, j=0)), [0])
        self.assertEqual(block_strip_violations(DOMINANT, OperatorIndices(Case.LOWERING, (1,), -1, 0, 2)), [0, 1])

    def test_reflecting_case_has_no_strip(self):
        indices = require_indices(self.rs, REFLECTABLE, 1, Operator.E_TILDE)
        self.assertEqual(block_strip_violations(REFLECTABLE, indices), [])

    def test_corpus_blocks(self):
        for label in ('A2', 'C2', 'G2'):
            rs = build_root_system(label)
            for serial, gallery in random_corpus(rs, 30, 11, 8):
                for alpha in range(1, rs.rank + 1):
                    for operator in (Operator.E, Operator.F):
                        indices = operator_indices(rs, gallery, alpha, operator)
                        if indices is None:
                            continue
                        with self.subTest(label=label, serial=serial, operator=operator, alpha=alpha):
                            self.assertEqual(block_strip_violations(gallery, indices), [])


class StrictVariantTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_strict_f_breaks_the_gallery(self):
        """Test that the printed f wall produces panels outside their alcoves"""
        result = apply_operator(self.rs, DOMINANT, 1, Operator.F, strict_paper=True)
        self.assertEqual(result.gallery, a1_gallery([0, -1, 0], [(1, 2), (-1, 0)]))
        evidence = [(v.kind, v.index) for v in result.violations]
        self.assertEqual(evidence, [(ViolationKind.PANEL_NOT_FACE, 0), (ViolationKind.PANEL_NOT_FACE, 1)])

    def test_strict_e_leaves_an_alcove_unassigned(self):
        gallery = a1_gallery([0, 1, 0, -1], [(0, 1), (0, 1), (-1, 0)])
        indices = require_indices(self.rs, gallery, 1, Operator.E)
        self.assertEqual((indices.m, indices.j, indices.k), (-1, 2, 3))
        result = apply_operator(self.rs, gallery, 1, Operator.E, strict_paper=True)
        kinds = [v.kind for v in result.violations]
        self.assertEqual(kinds[0], ViolationKind.UNASSIGNED_ALCOVE)
        self.assertEqual(result.violations[0].index, 1)

    def test_corrected_variant_reports_nothing(self):
        result = apply_operator(self.rs, DOMINANT, 1, Operator.F)
        self.assertEqual(result.violations, ())


class CorpusLawTests(SimpleTestCase):
    """Operator laws on seeded corpora of positively folded galleries."""

    def check_corpus(self, label, samples=40, seed=7, max_length=8):
        rs = build_root_system(label)
        for serial, gallery in random_corpus(rs, samples, seed, max_length):
            start_type = gallery_type(rs, gallery)
            for alpha in range(1, rs.rank + 1):
                coroot = rs.coroot(rs.simple_root(alpha))
                for operator, sign in ((Operator.E, 1), (Operator.F, -1), (Operator.E_TILDE, 0)):
                    image = try_operator(rs, gallery, alpha, operator)
                    if image is None:
                        continue
                    with self.subTest(label=label, serial=serial, operator=operator, alpha=alpha):
                        self.assertTrue(is_valid(rs, image))
                        expected = tuple(x + sign * c for x, c in zip(weight(gallery), coroot))
                        self.assertEqual(weight(image), expected)
                        self.assertEqual(gallery_type(rs, image), start_type)
                        self.assertEqual(reflection_normal_form(rs, gallery, alpha, operator), image)
                        inverse = {Operator.E: Operator.F, Operator.F: Operator.E}.get(operator)
                        if inverse is not None:
                            back = try_operator(rs, image, alpha, inverse)
                            if back is not None:
                                self.assertEqual(back, gallery)

    def test_a2_corpus(self):
        self.check_corpus('A2')

    def test_c2_corpus(self):
        self.check_corpus('C2')

    def test_g2_corpus(self):
        self.check_corpus('G2', samples=25)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10 ** 6))
    def test_f_then_e_is_identity(self, seed):
        rs = build_root_system('B2')
        for _, gallery in random_corpus(rs, 1, seed, 7):
            for alpha in (1, 2):
                image = try_operator(rs, gallery, alpha, Operator.F)
                if image is not None:
                    self.assertEqual(e_alpha(rs, image, alpha), gallery)


class OrbitTests(SimpleTestCase):

    def test_a1_orbit(self):
        rs = build_root_system('A1')
        members = orbit(rs, DOMINANT, lowering_operators(rs))
        self.assertEqual(members, [DOMINANT, FOLDED, LOWEST])

    def test_a2_crystal_matches_weyl_dimension(self):
        """Test the orbit of the highest coroot gallery against the dimension formula"""
        rs = build_root_system('A2')
        coweight = (Fraction(1), Fraction(1))
        self.assertEqual(weyl_dimension(rs, coweight), 8)
        start = minimal_dominant_gallery(rs, coweight)
        self.assertEqual(len(orbit(rs, start, lowering_operators(rs))), 8)
        self.assertEqual(len(orbit(rs, start, crystal_operators(rs))), 8)

    def test_weyl_dimension(self):
        self.assertEqual(weyl_dimension(build_root_system('A1'), (2,)), 3)
        self.assertEqual(weyl_dimension(build_root_system('A2'), (0, 0)), 1)
        self.assertEqual(weyl_dimension(build_root_system('A2'), (3, 0)), 10)

    def test_highest_and_lowest_elements(self):
        rs = build_root_system('A1')
        self.assertEqual(highest_element(rs, LOWEST), DOMINANT)
        self.assertEqual(lowest_element(rs, DOMINANT), LOWEST)

    @override_settings(GALLERY_FOLDING={'ORBIT_BUDGET': 3})
    def test_orbit_budget(self):
        rs = build_root_system('A2')
        start = minimal_dominant_gallery(rs, (Fraction(1), Fraction(1)))
        with self.assertRaises(BudgetExceeded):
            orbit(rs, start, lowering_operators(rs))
