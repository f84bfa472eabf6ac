from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from gallery.models import Face

from .exceptions import ForeignRoot, GeometryError, NotCoweight, NotVertex, UnsupportedType
from .linalg import rank, row_echelon, solve
from .models import AffineIsometry, Hyperplane, Sign
from .services import (
    CARTAN_MATRICES,
    affine_reflection,
    alcove_at,
    barycentric,
    build_root_system,
    contains_point,
    coroot_translation,
    fold_point,
    fundamental_alcove,
    is_vertex,
    pairing,
    position_sign,
    support_face,
    translate,
    vertex_type,
)

TYPES = sorted(CARTAN_MATRICES)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def point_for(type_label):
    rs = build_root_system(type_label)
    return st.tuples(*[rationals] * rs.rank)


class LinalgTests(SimpleTestCase):

    def test_solve_unique(self):
        """Test that a regular system has its unique solution"""
        self.assertEqual(solve([[2, -1], [-1, 2]], (1, 1)), (Fraction(1), Fraction(1)))

    def test_solve_singular_returns_none(self):
        self.assertIsNone(solve([[1, 2], [2, 4]], (1, 1)))
        self.assertIsNone(solve([[1, 2], [2, 4]], (1, 2)))

    def test_solve_consistent_overdetermined(self):
        """Test that an overdetermined but consistent system is solved"""
        self.assertEqual(solve([[1, 0], [0, 1], [1, 1]], (2, 3, 5)), (2, 3))
        self.assertIsNone(solve([[1, 0], [0, 1], [1, 1]], (2, 3, 6)))

    def test_rank(self):
        self.assertEqual(rank([(1, 0), (0, 1), (1, 1)]), 2)
        self.assertEqual(rank([(1, 2), (2, 4)]), 1)

    def test_row_echelon_reports_free_columns(self):
        self.assertEqual(row_echelon([[1, 1, 0], [0, 0, 1]]), [1])


class RootSystemTests(SimpleTestCase):

    def test_positive_root_counts(self):
        """Test the number of positive roots of every supported type"""
        expected = {'A1': 1, 'A2': 3, 'B2': 4, 'C2': 4, 'G2': 6, 'A3': 6}
        for label, count in expected.items():
            with self.subTest(label=label):
                self.assertEqual(len(build_root_system(label).positive_roots), count)

    def test_a1_coroot(self):
        rs = build_root_system('A1')
        self.assertEqual(rs.positive_roots, ((1,),))
        self.assertEqual(rs.coroot((1,)), (Fraction(2),))

    def test_highest_roots(self):
        self.assertEqual(build_root_system('A2').highest_root, (1, 1))
        self.assertEqual(build_root_system('G2').highest_root, (3, 2))
        self.assertEqual(build_root_system('A3').highest_root, (1, 1, 1))

    def test_root_pairs_to_two_with_its_coroot(self):
        """Test that <alpha^vee, alpha> = 2 for every root"""
        for label in TYPES:
            rs = build_root_system(label)
            for root in rs.positive_roots:
                with self.subTest(label=label, root=root):
                    self.assertEqual(pairing(rs, rs.coroot(root), root), 2)
                    negative = tuple(-c for c in root)
                    self.assertEqual(pairing(rs, rs.coroot(negative), negative), 2)

    def test_closed_under_simple_reflections(self):
        for label in TYPES:
            rs = build_root_system(label)
            for i, simple in enumerate(rs.simple_roots):
                for root in rs.positive_roots:
                    level = pairing(rs, rs.coroot(simple), root)
                    image = tuple(c - level * int(j == i) for j, c in enumerate(root))
                    with self.subTest(label=label, root=root, i=i):
                        self.assertTrue(rs.is_root(image))

    def test_unsupported_type(self):
        with self.assertRaises(UnsupportedType):
            build_root_system('E8')


class PairingTests(SimpleTestCase):

    def test_origin_pairs_to_zero(self):
        rs = build_root_system('G2')
        for root in rs.positive_roots:
            self.assertEqual(pairing(rs, rs.origin, root), 0)

    def test_level_coordinates(self):
        self.assertEqual(pairing(build_root_system('A1'), (3,), (1,)), 3)

    def test_cartan_entry(self):
        """Test that <alpha_1^vee, alpha_2> = -1 in A2"""
        rs = build_root_system('A2')
        self.assertEqual(pairing(rs, rs.coroot((1, 0)), (0, 1)), -1)

    def test_foreign_root(self):
        with self.assertRaises(ForeignRoot):
            pairing(build_root_system('A2'), (0, 0), (2, 1))

    def test_negative_hyperplane_is_normalized(self):
        self.assertEqual(Hyperplane.of((-1, -1), 2), Hyperplane((1, 1), -2))


class IsometryTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')
        self.alpha = (1,)

    def test_reflection_through_origin(self):
        self.assertEqual(affine_reflection(self.rs, self.alpha, 0)((3,)), (-3,))

    def test_reflection_at_negative_level(self):
        self.assertEqual(affine_reflection(self.rs, self.alpha, -1)((-2,)), (0,))

    def test_translation(self):
        self.assertEqual(translate(self.rs, (2,))((0,)), (2,))
        self.assertTrue(translate(self.rs, (0,)).is_identity)

    def test_translation_outside_coroot_lattice(self):
        with self.assertRaises(NotCoweight):
            translate(self.rs, (1,))
        with self.assertRaises(NotCoweight):
            translate(build_root_system('A2'), (1, 0))

    def test_consecutive_reflections_translate(self):
        """Test that s_{alpha,m+1} after s_{alpha,m} is t_{alpha^vee}"""
        for label in ('A1', 'A2', 'B2', 'G2'):
            rs = build_root_system(label)
            for alpha in rs.simple_roots:
                for m in range(-5, 6):
                    composite = affine_reflection(rs, alpha, m + 1).compose(affine_reflection(rs, alpha, m))
                    with self.subTest(label=label, alpha=alpha, m=m):
                        self.assertEqual(composite, coroot_translation(rs, alpha))

    def test_position_sign(self):
        rs = self.rs
        self.assertEqual(position_sign(rs, rs.origin, Hyperplane((1,), 0)), Sign.ZERO)
        self.assertEqual(position_sign(rs, (-2,), Hyperplane((1,), -1)), Sign.NEGATIVE)
        self.assertEqual(position_sign(rs, (3,), Hyperplane((1,), 1)), Sign.POSITIVE)

    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), label=st.sampled_from(TYPES), m=st.integers(-4, 4))
    def test_reflection_is_involution(self, data, label, m):
        rs = build_root_system(label)
        root = data.draw(st.sampled_from(rs.positive_roots))
        x = data.draw(point_for(label))
        reflection = affine_reflection(rs, root, m)
        self.assertEqual(reflection(reflection(x)), x)
        self.assertTrue(reflection.compose(reflection).is_identity)

    @settings(max_examples=60, deadline=None)
    @given(data=st.data(), label=st.sampled_from(TYPES), m=st.integers(-4, 4))
    def test_reflection_swaps_half_spaces(self, data, label, m):
        rs = build_root_system(label)
        root = data.draw(st.sampled_from(rs.positive_roots))
        x = data.draw(point_for(label))
        wall = Hyperplane(root, m)
        image = affine_reflection(rs, root, m)(x)
        self.assertEqual(position_sign(rs, image, wall), -position_sign(rs, x, wall))

    @settings(max_examples=40, deadline=None)
    @given(data=st.data(), label=st.sampled_from(TYPES))
    def test_translations_commute(self, data, label):
        rs = build_root_system(label)
        first = coroot_translation(rs, data.draw(st.sampled_from(rs.positive_roots)))
        second = coroot_translation(rs, data.draw(st.sampled_from(rs.positive_roots)), -1)
        self.assertEqual(first.compose(second), second.compose(first))

    def test_identity_composition(self):
        identity = AffineIsometry.identity(2)
        reflection = affine_reflection(build_root_system('A2'), (1, 1), 1)
        self.assertEqual(identity.compose(reflection), reflection)
        self.assertEqual(reflection.compose(identity), reflection)


class AlcoveGeometryTests(SimpleTestCase):

    def test_fundamental_alcove(self):
        rs = build_root_system('A2')
        self.assertEqual(fundamental_alcove(rs), Face(((0, 0), (1, 0), (0, 1))))
        rs = build_root_system('G2')
        self.assertEqual(fundamental_alcove(rs), Face(((0, 0), (Fraction(1, 3), 0), (0, Fraction(1, 2)))))

    def test_fold_point_lands_in_fundamental_alcove(self):
        rs = build_root_system('A2')
        folded, applied = fold_point(rs, (Fraction(5, 2), Fraction(-7, 3)))
        self.assertTrue(contains_point(fundamental_alcove(rs), folded))
        self.assertTrue(applied)

    def test_vertex_types(self):
        rs = build_root_system('A2')
        self.assertEqual(vertex_type(rs, (Fraction(0), Fraction(0))), 0)
        self.assertEqual(vertex_type(rs, (Fraction(2), Fraction(-1))), 0)
        self.assertEqual(vertex_type(rs, (Fraction(1), Fraction(0))), 1)
        self.assertEqual(vertex_type(rs, (Fraction(0), Fraction(1))), 2)

    def test_vertex_type_of_a_non_vertex(self):
        rs = build_root_system('A2')
        with self.assertRaises(NotVertex) as caught:
            vertex_type(rs, (Fraction(1, 2), Fraction(0)))
        self.assertIsInstance(caught.exception, GeometryError)
        self.assertEqual(caught.exception.code, 'not_vertex')

    def test_is_vertex(self):
        rs = build_root_system('A2')
        self.assertTrue(is_vertex(rs, (Fraction(1), Fraction(0))))
        self.assertFalse(is_vertex(rs, (Fraction(1, 2), Fraction(0))))

    def test_alcove_at_follows_direction(self):
        rs = build_root_system('A1')
        self.assertEqual(alcove_at(rs, (0,), (1,)), Face(((0,), (1,))))
        self.assertEqual(alcove_at(rs, (0,), (-1,)), Face(((-1,), (0,))))

    def test_support_face(self):
        rs = build_root_system('A2')
        self.assertEqual(support_face(rs, (Fraction(1, 2), 0)), Face(((0, 0), (1, 0))))
        self.assertEqual(support_face(rs, (0, 0)), Face(((0, 0),)))
        inner = (Fraction(1, 3), Fraction(1, 3))
        self.assertEqual(support_face(rs, inner), fundamental_alcove(rs))

    def test_barycentric_coordinates(self):
        alcove = fundamental_alcove(build_root_system('A2'))
        coordinates = barycentric(alcove, (Fraction(1, 3), Fraction(1, 3)))
        self.assertEqual(sum(coordinates), 1)
        self.assertTrue(all(c == Fraction(1, 3) for c in coordinates))
        self.assertFalse(contains_point(alcove, (1, 1)))
