from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from folding.exceptions import OperatorUndefined
from folding.models import Operator
from folding.services import f_alpha, try_operator
from gallery.models import CombinatorialGallery, Face
from gallery.services import is_valid, weight
from root_geometry.services import build_root_system

from .models import Piece, Segment
from .services import crossing_parameters, embed, embed_segment, path_in_gallery, push_through


def a1_gallery(panels, alcoves):
    return CombinatorialGallery(
        tuple(Face(((p,),)) for p in panels),
        tuple(Face(((a,), (b,))) for a, b in alcoves),
    )


DOMINANT = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])
FOLDED = a1_gallery([0, -1, 0], [(-1, 0), (-1, 0)])


class SegmentTests(SimpleTestCase):

    def test_points_along_the_segment(self):
        segment = Segment((0, 0), (1, 1))
        self.assertEqual(segment.direction, (1, 1))
        self.assertEqual(segment.at(Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2)))

    def test_crossing_parameters(self):
        self.assertEqual(crossing_parameters(build_root_system('A1'), Segment((0,), (2,))), [0, Fraction(1, 2), 1])
        a2 = build_root_system('A2')
        self.assertEqual(
            crossing_parameters(a2, Segment((0, 0), (2, 2))),
            [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1],
        )


class EmbedTests(SimpleTestCase):

    def test_a1_segment(self):
        rs = build_root_system('A1')
        embedding = embed(rs, Segment((0,), (2,)))
        self.assertEqual(embedding.gallery, DOMINANT)
        self.assertEqual(embedding.pieces, (Piece(0, Fraction(1, 2), 0), Piece(Fraction(1, 2), 1, 1)))

    def test_constant_segment(self):
        rs = build_root_system('A2')
        embedding = embed(rs, Segment((1, 1), (1, 1)))
        self.assertEqual(embedding.gallery, CombinatorialGallery.trivial(Face(((1, 1),))))
        self.assertEqual(embedding.pieces, ())

    def test_regular_segment(self):
        rs = build_root_system('A2')
        gallery = embed_segment(rs, Segment((0, 0), (1, 1)))
        self.assertTrue(is_valid(rs, gallery))
        self.assertEqual(gallery.length, 2)
        self.assertEqual(weight(gallery), (1, 1))

    def test_segment_through_a_vertex(self):
        """Test that the gallery turns around a vertex met in the interior"""
        rs = build_root_system('A2')
        embedding = embed(rs, Segment((0, 0), (2, 2)))
        self.assertTrue(is_valid(rs, embedding.gallery))
        self.assertEqual(weight(embedding.gallery), (2, 2))
        self.assertEqual(len(embedding.pieces), 4)
        self.assertGreater(embedding.gallery.length, 4)

    def test_segment_inside_a_wall(self):
        rs = build_root_system('A2')
        gallery = embed_segment(rs, Segment((0, 0), (0, 3)))
        self.assertTrue(is_valid(rs, gallery))
        self.assertEqual(gallery.alcoves[0].dimension, 1)
        self.assertEqual(gallery.length, 3)
        self.assertEqual(weight(gallery), (0, 3))


class PushThroughTests(SimpleTestCase):

    def test_a1_fold(self):
        rs = build_root_system('A1')
        pushed = push_through(rs, Segment((0,), (2,)), [(Operator.F, 1)])
        self.assertEqual(pushed.gallery, FOLDED)
        self.assertEqual(pushed.path.points, ((0,), (-1,), (0,)))
        self.assertEqual(pushed.path.end, weight(pushed.gallery))
        self.assertTrue(path_in_gallery(pushed))

    def test_without_operations(self):
        rs = build_root_system('A1')
        pushed = push_through(rs, Segment((0,), (2,)), [])
        self.assertEqual(pushed.path.points, ((0,), (1,), (2,)))
        self.assertEqual(pushed.gallery, DOMINANT)

    def test_undefined_operation(self):
        with self.assertRaises(OperatorUndefined):
            push_through(build_root_system('A1'), Segment((0,), (2,)), [(Operator.E, 1)])

    def test_a2_operators(self):
        rs = build_root_system('A2')
        segment = Segment((0, 0), (2, 2))
        gallery = embed_segment(rs, segment)
        for alpha in (1, 2):
            with self.subTest(alpha=alpha):
                pushed = push_through(rs, segment, [(Operator.F, alpha)])
                self.assertEqual(pushed.gallery, f_alpha(rs, gallery, alpha))
                self.assertEqual(pushed.path.end, weight(pushed.gallery))
                self.assertTrue(path_in_gallery(pushed))

    @settings(max_examples=20, deadline=None)
    @given(
        end=st.sampled_from([(1, 1), (2, 2), (4, 1), (1, -2)]),
        operations=st.lists(
            st.tuples(st.sampled_from([Operator.E, Operator.F]), st.integers(1, 2)),
            max_size=3,
        ),
    )
    def test_endpoint_law(self, end, operations):
        rs = build_root_system('A2')
        segment = Segment((0, 0), end)
        gallery = embed_segment(rs, segment)
        applied = []
        for operator, alpha in operations:
            image = try_operator(rs, gallery, alpha, operator)
            if image is not None:
                gallery = image
                applied.append((operator, alpha))
        pushed = push_through(rs, segment, applied)
        self.assertEqual(pushed.gallery, gallery)
        self.assertEqual(pushed.path.end, weight(gallery))
        self.assertTrue(path_in_gallery(pushed))
