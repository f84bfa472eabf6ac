from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from folding.models import Operator
from folding.services import f_alpha, require_indices
from gallery.generators import random_corpus
from gallery.models import CombinatorialGallery, Face
from gallery.services import alcove_window, crossing_count, is_valid, weakly_above
from root_geometry.services import affine_reflection, build_root_system

from .exceptions import ChartMismatch, OutsideDomain, RegularityViolated
from .models import ChartId, ChartKind, Direction, FoldingAutomorphism, HalfSpace, LabeledFace, LabeledGallery
from .services import (
    BASE,
    folding_automorphism_apply,
    induced_reflection,
    iota,
    lift,
    preimage,
    reflection_lemma_holds,
    retract,
    retract_gallery,
    transition,
)
from .theorems import Outcome, evaluate_theorem, regularity_violation, theorem_ef_rhs, theorem_rhs

ALPHA = (1,)


def face(*levels):
    return Face(tuple((level,) for level in levels))


def a1_gallery(panels, alcoves):
    return CombinatorialGallery(tuple(face(p) for p in panels), tuple(face(a, b) for a, b in alcoves))


DOMINANT = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])
FOLDED = a1_gallery([0, -1, 0], [(-1, 0), (-1, 0)])
REFLECTABLE = a1_gallery([0, 0, 1], [(-1, 0), (0, 1)])


class ChartTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')
        self.lower = ChartId.lower(ALPHA, 0)
        self.folded = ChartId.folded(ALPHA, 0)

    def test_chart_ids(self):
        self.assertTrue(BASE.is_base)
        self.assertEqual(self.lower.kind, ChartKind.LOWER)
        self.assertEqual(lift(self.rs, face(0, 1), ALPHA, 0), LabeledFace(self.lower, face(0, 1)))
        self.assertIn('Lower', str(self.lower))

    def test_retractions_of_the_lower_branch(self):
        branch = LabeledFace(self.lower, face(0, 1))
        self.assertEqual(retract(self.rs, branch, Direction.ANTIDOMINANT), face(0, 1))
        self.assertEqual(retract(self.rs, branch, Direction.DOMINANT), face(-1, 0))

    def test_retractions_of_the_folded_chart(self):
        lower_half = LabeledFace(self.folded, face(-1, 0))
        self.assertEqual(retract(self.rs, lower_half, Direction.DOMINANT), face(-1, 0))
        self.assertEqual(retract(self.rs, lower_half, Direction.ANTIDOMINANT), face(0, 1))

    def test_base_is_fixed(self):
        x = LabeledFace(BASE, face(3, 4))
        for direction in Direction:
            self.assertEqual(retract(self.rs, x, direction), face(3, 4))

    def test_transition_through_the_shared_half(self):
        x = LabeledFace(BASE, face(-1, 0))
        self.assertEqual(transition(self.rs, x, self.lower), LabeledFace(self.lower, face(-1, 0)))
        with self.assertRaises(OutsideDomain):
            transition(self.rs, LabeledFace(BASE, face(0, 1)), self.lower)

    def test_transition_between_branches(self):
        x = LabeledFace(self.lower, face(0, 1))
        moved = transition(self.rs, x, self.folded)
        self.assertEqual(moved, LabeledFace(self.folded, face(-1, 0)))
        self.assertEqual(transition(self.rs, moved, self.lower), x)

    def test_transition_needs_a_common_wall(self):
        with self.assertRaises(ChartMismatch):
            transition(self.rs, LabeledFace(self.lower, face(0, 1)), ChartId.folded(ALPHA, 1))

    def test_preimage(self):
        self.assertEqual(preimage(self.rs, face(0, 1), ALPHA, 0, Direction.DOMINANT), LabeledFace(BASE, face(0, 1)))
        self.assertEqual(
            preimage(self.rs, face(-1, 0), ALPHA, 0, Direction.DOMINANT),
            LabeledFace(self.folded, face(-1, 0)),
        )
        self.assertEqual(preimage(self.rs, face(-1, 0), ALPHA, 0, Direction.ANTIDOMINANT).chart, self.lower)

    def test_iota_moves_between_levels(self):
        x = LabeledFace(self.lower, face(1, 2))
        self.assertEqual(iota(self.rs, x, ALPHA, 0, -1), LabeledFace(ChartId.lower(ALPHA, -1), face(-1, 0)))
        self.assertEqual(iota(self.rs, LabeledFace(BASE, face(0, 1)), ALPHA, 0, -1), LabeledFace(BASE, face(0, 1)))

    def test_iota_domain(self):
        with self.assertRaises(OutsideDomain):
            iota(self.rs, LabeledFace(BASE, face(-1, 0)), ALPHA, 0, 1)
        with self.assertRaises(ChartMismatch):
            iota(self.rs, LabeledFace(ChartId.lower(ALPHA, 2), face(2, 3)), ALPHA, 0, 1)

    def test_retract_gallery(self):
        labeled = LabeledGallery.in_chart(DOMINANT, self.lower)
        self.assertEqual(retract_gallery(self.rs, labeled, Direction.ANTIDOMINANT), DOMINANT)
        image = retract_gallery(self.rs, labeled, Direction.DOMINANT)
        self.assertEqual(image, a1_gallery([0, -1, -2], [(-1, 0), (-2, -1)]))


class ReflectionLemmaTests(SimpleTestCase):

    def test_a1(self):
        self.assertTrue(reflection_lemma_holds(build_root_system('A1'), face(0, 1), ALPHA, 0))

    def test_window_near_origin(self):
        """Test both retractions of every branch alcove near the origin"""
        for label in ('A2', 'C2', 'G2'):
            rs = build_root_system(label)
            for alpha in rs.simple_roots:
                for k in range(-3, 4):
                    reflection = affine_reflection(rs, alpha, k)
                    for alcove in alcove_window(rs, 2):
                        branch = alcove if weakly_above(alcove, alpha, k) else alcove.map(reflection)
                        with self.subTest(label=label, alpha=alpha, k=k, alcove=str(alcove)):
                            self.assertTrue(reflection_lemma_holds(rs, branch, alpha, k))

    def test_retraction_keeps_galleries_valid(self):
        rs = build_root_system('A2')
        for serial, gallery in random_corpus(rs, 20, 11, 8):
            for alpha in rs.simple_roots:
                labeled = LabeledGallery.in_chart(gallery, ChartId.lower(alpha, 0))
                image = retract_gallery(rs, labeled, Direction.DOMINANT)
                with self.subTest(serial=serial, alpha=alpha):
                    self.assertTrue(is_valid(rs, image))
                    self.assertLessEqual(crossing_count(image), crossing_count(gallery))


class FoldingAutomorphismTests(SimpleTestCase):

    def test_induced_reflection(self):
        rs = build_root_system('A2')
        for alpha in rs.simple_roots:
            for k in (-1, 0, 2):
                u = FoldingAutomorphism(alpha, k, HalfSpace.NEGATIVE)
                reflection = affine_reflection(rs, alpha, k)
                for alcove in alcove_window(rs, 2):
                    with self.subTest(alpha=alpha, k=k):
                        self.assertEqual(induced_reflection(rs, u, alcove), alcove.map(reflection))

    def test_apply_swaps_the_opposite_half(self):
        rs = build_root_system('A1')
        u = FoldingAutomorphism(ALPHA, 0, HalfSpace.NEGATIVE)
        lower = ChartId.lower(ALPHA, 0)
        fixed = LabeledFace(BASE, face(-1, 0))
        self.assertEqual(folding_automorphism_apply(rs, u, fixed), fixed)
        moved = folding_automorphism_apply(rs, u, LabeledFace(BASE, face(0, 1)))
        self.assertEqual(moved, LabeledFace(lower, face(0, 1)))
        self.assertEqual(folding_automorphism_apply(rs, u, moved), LabeledFace(BASE, face(0, 1)))
        with self.assertRaises(ChartMismatch):
            folding_automorphism_apply(rs, u, LabeledFace(ChartId.lower(ALPHA, 1), face(1, 2)))

    def test_opposite(self):
        u = FoldingAutomorphism(ALPHA, 1, HalfSpace.NEGATIVE)
        self.assertEqual(u.opposite().fixed_half, HalfSpace.POSITIVE)
        self.assertEqual(u.opposite().opposite(), u)


class TheoremTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_f_from_retractions(self):
        self.assertEqual(theorem_ef_rhs(self.rs, DOMINANT, 1, Operator.F), FOLDED)
        self.assertEqual(evaluate_theorem(self.rs, DOMINANT, 1, Operator.F), Outcome.MATCH)

    def test_e_from_retractions(self):
        self.assertEqual(theorem_rhs(self.rs, FOLDED, 1, Operator.E), DOMINANT)
        self.assertEqual(evaluate_theorem(self.rs, FOLDED, 1, Operator.E), Outcome.MATCH)

    def test_etilde_from_retractions(self):
        expected = a1_gallery([0, 0, 1], [(0, 1), (0, 1)])
        self.assertEqual(theorem_rhs(self.rs, REFLECTABLE, 1, Operator.E_TILDE), expected)
        self.assertEqual(evaluate_theorem(self.rs, REFLECTABLE, 1, Operator.E_TILDE), Outcome.MATCH)

    def test_undefined(self):
        self.assertEqual(evaluate_theorem(self.rs, DOMINANT, 1, Operator.E), Outcome.UNDEFINED)

    def test_irregular_gallery(self):
        """Test that an alcove below H_{alpha,m} breaks the hypothesis for f"""
        indices = require_indices(self.rs, REFLECTABLE, 1, Operator.F)
        self.assertEqual(regularity_violation(REFLECTABLE, indices, Operator.F), 0)
        self.assertEqual(evaluate_theorem(self.rs, REFLECTABLE, 1, Operator.F), Outcome.IRREGULAR)
        with self.assertRaises(RegularityViolated) as caught:
            theorem_ef_rhs(self.rs, REFLECTABLE, 1, Operator.F)
        self.assertEqual(caught.exception.index, 0)
        outcome = evaluate_theorem(self.rs, REFLECTABLE, 1, Operator.F, experiment=True)
        self.assertIn(outcome, (Outcome.IRREGULAR_AGREE, Outcome.IRREGULAR_DISAGREE))

    def test_ef_rhs_rejects_etilde(self):
        with self.assertRaises(ValueError):
            theorem_ef_rhs(self.rs, REFLECTABLE, 1, Operator.E_TILDE)

    @settings(max_examples=10, deadline=None)
    @given(seed=st.integers(0, 10 ** 6), label=st.sampled_from(['A2', 'C2', 'G2']))
    def test_no_mismatch_on_regular_galleries(self, seed, label):
        rs = build_root_system(label)
        for serial, gallery in random_corpus(rs, 5, seed, 8):
            for alpha in range(1, rs.rank + 1):
                for operator in Operator:
                    outcome = evaluate_theorem(rs, gallery, alpha, operator)
                    self.assertNotEqual(outcome, Outcome.MISMATCH, f'{serial} {operator}{alpha} {gallery}')

    def test_direct_and_rebuilt_f_agree_on_a2_corpus(self):
        rs = build_root_system('A2')
        for serial, gallery in random_corpus(rs, 30, 7, 8):
            for alpha in (1, 2):
                if evaluate_theorem(rs, gallery, alpha, Operator.F) == Outcome.MATCH:
                    self.assertEqual(theorem_rhs(rs, gallery, alpha, Operator.F), f_alpha(rs, gallery, alpha))
