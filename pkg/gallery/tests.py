import random
from collections import deque
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from rest_framework.exceptions import ParseError

from root_geometry.models import AffineIsometry
from root_geometry.services import affine_reflection, build_root_system, coroot_translation, fundamental_alcove

from .exceptions import EndpointNotVertex, IndexOutOfRange, InvalidFace, JunctionMismatch
from .generators import (
    dominant_coweights,
    generate_random_folded,
    minimal_dominant_gallery,
    minimal_length,
    random_corpus,
)
from .models import CombinatorialGallery, Face, GalleryDocument, ViolationKind
from .serializers import parse_document, serialize_document
from .services import (
    alcove_window,
    alcoves_containing,
    apply_map,
    check_face,
    concat,
    crossing_count,
    gallery_type,
    is_positively_folded,
    is_valid,
    minimal_gallery,
    reflect_across,
    separating_walls,
    split,
    validate,
    weight,
)


def a1_gallery(panels, alcoves):
    """A1 gallery from panel levels and (low, high) alcove levels."""
    return CombinatorialGallery(
        tuple(Face(((p,),)) for p in panels),
        tuple(Face(((a,), (b,))) for a, b in alcoves),
    )


def affine_weyl_elements(rs, count, seed):
    """Seeded products of affine reflections and coroot translations."""
    rng = random.Random(seed)
    elements = []
    for _ in range(count):
        element = AffineIsometry.identity(rs.rank)
        for _ in range(rng.randint(1, 4)):
            root = rng.choice(rs.positive_roots)
            if rng.random() < 0.5:
                step = affine_reflection(rs, root, rng.randint(-2, 2))
            else:
                step = coroot_translation(rs, root, rng.choice((-1, 1)))
            element = step.compose(element)
        elements.append(element)
    return elements


def alcove_distance(rs, start, end):
    """Breadth-first count of wall crossings between the stars of two faces."""
    sources = alcoves_containing(rs, start)
    targets = set(alcoves_containing(rs, end))
    seen = {alcove: 0 for alcove in sources}
    queue = deque(sources)
    while queue:
        alcove = queue.popleft()
        if alcove in targets:
            return seen[alcove]
        for panel in alcove.facets():
            neighbour = reflect_across(rs, alcove, panel)
            if neighbour not in seen:
                seen[neighbour] = seen[alcove] + 1
                queue.append(neighbour)
    return None


class FaceTests(SimpleTestCase):

    def test_vertices_are_sorted(self):
        self.assertEqual(Face(((1, 0), (0, 0))).vertices, ((0, 0), (1, 0)))

    def test_levels(self):
        face = Face(((0, 0), (1, 0), (0, 1)))
        self.assertEqual(face.level_range((1, 1)), (0, 1))
        self.assertIsNone(face.level((1, 0)))
        self.assertEqual(Face(((0, 0), (0, 1))).level((1, 0)), 0)
        gallery = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])
        self.assertEqual(gallery.panel_levels((1,)), (0, 1, 2))
        self.assertEqual(gallery.panel_levels([1]), (0, 1, 2))

    def test_faces_and_meet(self):
        alcove = Face(((0, 0), (1, 0), (0, 1)))
        self.assertEqual(len(alcove.facets()), 3)
        self.assertEqual(alcove.meet(Face(((0, 0), (0, 1), (-1, 1)))), Face(((0, 0), (0, 1))))

    def test_check_face_rejects_long_segment(self):
        """Test that a segment crossing a wall is not a face"""
        with self.assertRaises(InvalidFace):
            check_face(build_root_system('A1'), Face(((0,), (2,))))

    def test_check_face_rejects_non_vertex(self):
        with self.assertRaises(InvalidFace):
            check_face(build_root_system('A2'), Face(((Fraction(1, 2), 0),)))


class ValidateTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')

    def test_minimal_gallery_is_valid(self):
        gallery = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])
        self.assertEqual(validate(self.rs, gallery), [])

    def test_junction_defect_names_index(self):
        gallery = a1_gallery([0, 2, 2], [(0, 1), (1, 2)])
        violations = validate(self.rs, gallery)
        self.assertEqual([(v.kind, v.index) for v in violations], [(ViolationKind.PANEL_NOT_FACE, 1)])

    def test_shape_violation(self):
        gallery = CombinatorialGallery((Face(((0,),)),), (Face(((0,), (1,))),))
        self.assertEqual(validate(self.rs, gallery)[0].kind, ViolationKind.SHAPE)

    def test_invalid_face(self):
        gallery = a1_gallery([0, 2], [(0, 2)])
        kinds = {v.kind for v in validate(self.rs, gallery)}
        self.assertIn(ViolationKind.INVALID_FACE, kinds)

    def test_dimension_mismatch(self):
        gallery = CombinatorialGallery(
            (Face(((0,),)), Face(((1,),)), Face(((1,),))),
            (Face(((0,), (1,))), Face(((1,),))),
        )
        kinds = [v.kind for v in validate(self.rs, gallery)]
        self.assertIn(ViolationKind.DIMENSION_MISMATCH, kinds)

    def test_interior_panel_must_be_a_facet(self):
        rs = build_root_system('A2')
        first = fundamental_alcove(rs)
        second = first.map(affine_reflection(rs, (1, 0), 0))
        origin, top = Face(((0, 0),)), Face(((0, 1),))
        gallery = CombinatorialGallery((origin, origin, top), (first, second))
        violations = validate(rs, gallery)
        self.assertEqual([(v.kind, v.index) for v in violations], [(ViolationKind.PANEL_CODIMENSION, 1)])

    def test_trivial_gallery_is_valid(self):
        self.assertTrue(is_valid(self.rs, CombinatorialGallery.trivial(Face(((0,),)))))


class GalleryOperationTests(SimpleTestCase):

    def setUp(self):
        self.rs = build_root_system('A1')
        self.gallery = a1_gallery([0, 1, 2], [(0, 1), (1, 2)])

    def test_split_and_concat(self):
        head, tail = split(self.gallery, 1)
        self.assertEqual(head, a1_gallery([0, 1], [(0, 1)]))
        self.assertEqual(tail, a1_gallery([1, 2], [(1, 2)]))
        self.assertEqual(concat(head, tail), self.gallery)

    def test_split_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            split(self.gallery, 3)

    def test_concat_needs_matching_junction(self):
        with self.assertRaises(JunctionMismatch):
            concat(a1_gallery([0, 1], [(0, 1)]), a1_gallery([2, 3], [(2, 3)]))

    def test_apply_map(self):
        image = apply_map(affine_reflection(self.rs, (1,), 0), self.gallery)
        self.assertEqual(image, a1_gallery([0, -1, -2], [(-1, 0), (-2, -1)]))
        self.assertTrue(is_valid(self.rs, image))

    def test_gallery_type_is_invariant_under_the_affine_weyl_group(self):
        for label in ('A2', 'C2'):
            rs = build_root_system(label)
            corpus = random_corpus(rs, 5, 2, 6)
            for w in affine_weyl_elements(rs, 20, label):
                for serial, gallery in corpus:
                    with self.subTest(label=label, w=str(w), serial=serial):
                        image = apply_map(w, gallery)
                        self.assertTrue(is_valid(rs, image))
                        self.assertEqual(gallery_type(rs, image), gallery_type(rs, gallery))

    def test_weight(self):
        self.assertEqual(weight(self.gallery), (2,))

    def test_weight_needs_vertex_endpoint(self):
        gallery = CombinatorialGallery((Face(((0,),)), Face(((0,), (1,)))), (Face(((0,), (1,))),))
        with self.assertRaises(EndpointNotVertex):
            weight(gallery)

    def test_gallery_type(self):
        labels = gallery_type(self.rs, self.gallery).labels
        self.assertEqual(labels, ((0,), (0, 1), (1,), (0, 1), (0,)))

    def test_folds_and_positivity(self):
        """Test that a bounce off H_{alpha,-1} from above is a positive fold"""
        positive = a1_gallery([0, -1, 0], [(-1, 0), (-1, 0)])
        negative = a1_gallery([0, 1, 0], [(0, 1), (0, 1)])
        self.assertEqual(positive.folds, (1,))
        self.assertEqual(crossing_count(positive), 0)
        self.assertEqual(crossing_count(self.gallery), 1)
        self.assertTrue(is_positively_folded(self.rs, positive))
        self.assertFalse(is_positively_folded(self.rs, negative))

    def test_alcove_window(self):
        self.assertEqual(len(alcove_window(self.rs, 2)), 5)
        self.assertEqual(len(alcoves_containing(build_root_system('A2'), Face(((0, 0),)))), 6)
        self.assertEqual(len(alcoves_containing(build_root_system('G2'), Face(((0, 0),)))), 12)

    def test_separating_walls(self):
        walls = separating_walls(self.rs, Face(((0,), (1,))), Face(((3,), (4,))))
        self.assertEqual([wall.level for wall in walls], [1, 2, 3])


class MinimalGalleryTests(SimpleTestCase):

    def test_minimal_length(self):
        rs = build_root_system('A2')
        self.assertEqual(minimal_length(rs, (1, 1)), 2)
        self.assertEqual(minimal_length(build_root_system('A1'), (2,)), 2)

    def test_minimal_dominant_gallery(self):
        for label, coweight in (('A2', (1, 1)), ('C2', (0, 1)), ('G2', (1, 0)), ('B2', (2, 0))):
            rs = build_root_system(label)
            coweight = tuple(Fraction(c) for c in coweight)
            with self.subTest(label=label):
                gallery = minimal_dominant_gallery(rs, coweight)
                self.assertTrue(is_valid(rs, gallery))
                self.assertEqual(weight(gallery), coweight)
                self.assertEqual(gallery.length, minimal_length(rs, coweight))
                self.assertEqual(gallery.folds, ())

    def test_minimal_gallery_between_alcove_faces(self):
        rs = build_root_system('A1')
        gallery = minimal_gallery(rs, Face(((-2,),)), Face(((1,),)))
        self.assertEqual(gallery, a1_gallery([-2, -1, 0, 1], [(-2, -1), (-1, 0), (0, 1)]))

    def test_minimal_gallery_matches_breadth_first_search(self):
        rs = build_root_system('A2')
        vertices = sorted({v for alcove in alcove_window(rs, 3) for v in alcove.vertices})
        for start in (Face((rs.origin,)), Face(((Fraction(1), Fraction(0)),))):
            for v in vertices:
                end = Face((v,))
                if end == start:
                    continue
                with self.subTest(start=str(start), end=str(end)):
                    gallery = minimal_gallery(rs, start, end)
                    self.assertTrue(is_valid(rs, gallery))
                    self.assertEqual((gallery.start, gallery.end), (start, end))
                    self.assertEqual(gallery.length, alcove_distance(rs, start, end) + 1)

    def test_minimal_gallery_is_invariant_under_isometries(self):
        rs = build_root_system('A2')
        start, end = Face((rs.origin,)), Face(((Fraction(2), Fraction(-1)),))
        gallery = minimal_gallery(rs, start, end)
        for w in affine_weyl_elements(rs, 10, 3):
            with self.subTest(w=str(w)):
                moved = minimal_gallery(rs, start.map(w), end.map(w))
                self.assertEqual(moved.length, gallery.length)
                image = apply_map(w, gallery)
                self.assertTrue(is_valid(rs, image))
                self.assertEqual(image.length, alcove_distance(rs, start.map(w), end.map(w)) + 1)

    def test_dominant_coweights(self):
        self.assertEqual(dominant_coweights(build_root_system('A1'), 3), [(2,)])
        rs = build_root_system('A2')
        self.assertTrue(all(minimal_length(rs, c) <= 4 for c in dominant_coweights(rs, 4)))


class GeneratorTests(SimpleTestCase):

    def test_corpus_is_reproducible(self):
        rs = build_root_system('A2')
        self.assertEqual(random_corpus(rs, 5, 7, 6), random_corpus(rs, 5, 7, 6))
        self.assertNotEqual(random_corpus(rs, 5, 7, 6), random_corpus(rs, 5, 8, 6))

    def test_corpus_galleries_are_positively_folded(self):
        for label in ('A2', 'C2', 'G2'):
            rs = build_root_system(label)
            for serial, gallery in random_corpus(rs, 20, 3, 8):
                with self.subTest(label=label, serial=serial):
                    self.assertTrue(is_valid(rs, gallery))
                    self.assertEqual(gallery.start, Face((rs.origin,)))
                    self.assertTrue(is_positively_folded(rs, gallery))
                    self.assertLessEqual(gallery.length, 8)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10 ** 6))
    def test_generated_gallery_has_prescribed_type(self, seed):
        rs = build_root_system('C2')
        target = gallery_type(rs, minimal_dominant_gallery(rs, (Fraction(2), Fraction(0))))
        gallery = generate_random_folded(rs, target, seed)
        self.assertEqual(gallery_type(rs, gallery), target)
        self.assertTrue(is_valid(rs, gallery))


class DocumentSerializerTests(SimpleTestCase):

    canonical = b'{"root_system":"A1","galleries":[{"panels":[[["0"]],[["1"]]],"alcoves":[[["0"],["1"]]]}]}'

    def test_round_trip_is_byte_identical(self):
        self.assertEqual(serialize_document(parse_document(self.canonical)), self.canonical)

    def test_parse_builds_exact_faces(self):
        document = parse_document(self.canonical)
        self.assertEqual(document.type_label, 'A1')
        self.assertEqual(document.galleries[0], a1_gallery([0, 1], [(0, 1)]))

    def test_serialization_canonicalizes(self):
        raw = '{"root_system": "A1", "galleries": [{"panels": [[["0"]], [["2/2"]]], "alcoves": [[["1"], ["0/3"]]]}]}'
        once = serialize_document(parse_document(raw))
        self.assertEqual(once, self.canonical)
        self.assertEqual(serialize_document(parse_document(once)), once)

    def test_zero_denominator(self):
        raw = self.canonical.replace(b'"1"]]]', b'"1/0"]]]')
        with self.assertRaises(ParseError):
            parse_document(raw)

    def test_malformed_rational(self):
        with self.assertRaises(ParseError):
            parse_document(self.canonical.replace(b'[["0"]],', b'[["x"]],', 1))

    def test_malformed_json(self):
        with self.assertRaises(ParseError):
            parse_document(b'{"root_system": "A1", ')

    def test_wrong_coordinate_count(self):
        with self.assertRaises(ParseError):
            parse_document(self.canonical.replace(b'"A1"', b'"A2"'))

    def test_panel_alcove_counts(self):
        with self.assertRaises(ParseError):
            parse_document(b'{"root_system":"A1","galleries":[{"panels":[[["0"]]],"alcoves":[[["0"],["1"]]]}]}')

    @settings(max_examples=15, deadline=None)
    @given(seed=st.integers(0, 10 ** 6), label=st.sampled_from(['A2', 'B2', 'G2']))
    def test_corpus_round_trip(self, seed, label):
        rs = build_root_system(label)
        galleries = tuple(g for _, g in random_corpus(rs, 3, seed, 6))
        document = GalleryDocument(label, galleries)
        raw = serialize_document(document)
        self.assertEqual(parse_document(raw), document)
        self.assertEqual(serialize_document(parse_document(raw)), raw)
