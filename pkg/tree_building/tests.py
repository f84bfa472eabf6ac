from django.test import SimpleTestCase, override_settings

from .exceptions import BudgetExceeded, InvalidTreeParameters, MarginExceeded
from .models import End, TreeApartment
from .services import (
    alcove_profile_image,
    apartment_through,
    apartments_through,
    build_tree,
    busemann_level,
    check_margin,
    compat_witness,
    distance,
    fiber_partition,
    is_apartment,
    path,
    profile_partition,
    projection,
    retract_at_alcove,
    retract_from_end,
    uncovered_vertices,
    within_margin,
)


def off_apartment_child(tree, vertex):
    return next(v for v in tree.adjacency[vertex] if tree.apartment_index(v) is None)


class BuildTreeTests(SimpleTestCase):

    def test_vertex_counts(self):
        """Test the size of the ball around the base edge"""
        self.assertEqual(build_tree(2, 1).size, 6)
        self.assertEqual(build_tree(2, 8).size, 1022)
        self.assertEqual(build_tree(3, 2).size, 26)

    def test_degrees(self):
        tree = build_tree(3, 3)
        for v in range(tree.size):
            expected = 1 if tree.edge_distance[v] == tree.radius else tree.q + 1
            self.assertEqual(tree.degree(v), expected)

    def test_apartment_labels(self):
        tree = build_tree(2, 2)
        self.assertEqual(tree.apartment, (0, 1, 2, 3, 4, 5))
        self.assertEqual(tree.base_edge, (2, 3))
        self.assertEqual(tree.end_vertex(End.PLUS), tree.a(3))
        self.assertEqual(tree.end_vertex(End.MINUS), tree.a(-2))
        self.assertIsNone(tree.apartment_index(off_apartment_child(tree, tree.a(0))))

    def test_invalid_parameters(self):
        with self.assertRaises(InvalidTreeParameters):
            build_tree(1, 3)
        with self.assertRaises(InvalidTreeParameters):
            build_tree(2, 0)

    def test_radius_budget(self):
        with self.assertRaises(BudgetExceeded):
            build_tree(2, 13)

    @override_settings(GALLERY_FOLDING={'TREE_MAX_RADIUS': 2, 'TREE_END_MARGIN': 2})
    def test_radius_budget_follows_settings(self):
        with self.assertRaises(BudgetExceeded):
            build_tree(2, 3)


class MetricTests(SimpleTestCase):

    def setUp(self):
        self.tree = build_tree(2, 3)

    def test_path_along_the_apartment(self):
        tree = self.tree
        self.assertEqual(path(tree, tree.a(-1), tree.a(2)), [tree.a(i) for i in range(-1, 3)])
        self.assertEqual(distance(tree, tree.a(-3), tree.a(4)), 7)

    def test_projection_and_busemann_levels(self):
        tree = self.tree
        child = off_apartment_child(tree, tree.a(1))
        grandchild = next(v for v in tree.adjacency[child] if v != tree.a(1))
        self.assertEqual(projection(tree, grandchild), (1, 2))
        self.assertEqual(busemann_level(tree, End.PLUS, grandchild), -1)
        self.assertEqual(busemann_level(tree, End.MINUS, grandchild), 3)
        self.assertEqual(busemann_level(tree, End.PLUS, tree.a(2)), 2)


class ApartmentTests(SimpleTestCase):

    def setUp(self):
        self.tree = build_tree(2, 2)

    def test_standard_apartment(self):
        self.assertTrue(is_apartment(self.tree, TreeApartment(self.tree.apartment)))

    def test_non_apartments(self):
        tree = self.tree
        self.assertFalse(is_apartment(tree, TreeApartment(tree.apartment[1:])))
        self.assertFalse(is_apartment(tree, TreeApartment((tree.a(0),))))

    def test_apartment_through_a_vertex_and_an_edge(self):
        tree = self.tree
        x = off_apartment_child(tree, tree.a(0))
        apartment = apartment_through(tree, x, tree.base_edge)
        self.assertTrue(is_apartment(tree, apartment))
        for vertex in (x, *tree.base_edge):
            self.assertIn(vertex, apartment)

    def test_apartment_through_a_vertex_and_an_end(self):
        tree = self.tree
        x = off_apartment_child(tree, tree.a(-1))
        apartment = apartment_through(tree, x, End.PLUS)
        self.assertTrue(is_apartment(tree, apartment))
        self.assertIn(x, apartment)
        self.assertEqual(apartment.vertices[-1], tree.end_vertex(End.PLUS))

    def test_all_apartments_through_the_base_edge(self):
        tree = build_tree(2, 1)
        found = apartments_through(tree, tree.a(0), tree.base_edge)
        self.assertEqual(len(found), 4)
        self.assertEqual(len(set(found)), 4)
        self.assertTrue(all(is_apartment(tree, a) for a in found))


class AlcoveRetractionTests(SimpleTestCase):

    def setUp(self):
        self.tree = build_tree(2, 4)

    def test_apartment_is_fixed(self):
        tree = self.tree
        for i in range(-tree.radius, tree.radius + 2):
            self.assertEqual(retract_at_alcove(tree, tree.base_edge, tree.a(i)), tree.a(i))

    def test_matches_the_closed_form(self):
        tree = self.tree
        for c in ((tree.a(0), tree.a(1)), (tree.a(-1), tree.a(0))):
            for x in range(tree.size):
                with self.subTest(c=c, x=x):
                    try:
                        expected = alcove_profile_image(tree, c, x)
                    except MarginExceeded:
                        continue
                    self.assertEqual(retract_at_alcove(tree, c, x), expected)

    def test_any_witness_gives_the_same_image(self):
        tree = build_tree(2, 3)
        for x in range(tree.size):
            images = {
                retract_at_alcove(tree, tree.base_edge, x, witness)
                for witness in apartments_through(tree, x, tree.base_edge)
            }
            self.assertEqual(len(images), 1)

    def test_fiber_sizes(self):
        """Test that q^n vertices land on a_{-n} and on a_{n+1}"""
        for q in (2, 3):
            tree = build_tree(q, 4)
            fibers = fiber_partition(tree, tree.base_edge)
            for n in range(tree.radius + 1):
                with self.subTest(q=q, n=n):
                    self.assertEqual(len(fibers[tree.a(-n)]), q ** n)
                    self.assertEqual(len(fibers[tree.a(n + 1)]), q ** n)

    def test_fibers_cover_the_ball(self):
        tree = self.tree
        for c in tree.apartment_edges:
            with self.subTest(c=c):
                fibers = fiber_partition(tree, c)
                self.assertEqual(uncovered_vertices(tree, c), ())
                self.assertEqual(sum(len(members) for members in fibers.values()), tree.size)

    def test_profiles_agree(self):
        tree = self.tree
        for c in (tree.base_edge, (tree.a(-2), tree.a(-1))):
            self.assertEqual(fiber_partition(tree, c), profile_partition(tree, c))


class EndRetractionTests(SimpleTestCase):

    def setUp(self):
        self.tree = build_tree(2, 4)

    def test_apartment_is_fixed_near_the_base_edge(self):
        tree = self.tree
        for end in End:
            for i in range(-2, 4):
                self.assertEqual(retract_from_end(tree, end, tree.a(i)), tree.a(i))

    def test_off_apartment_vertex(self):
        tree = self.tree
        child = off_apartment_child(tree, tree.a(0))
        self.assertEqual(retract_from_end(tree, End.PLUS, child), tree.a(-1))
        self.assertEqual(retract_from_end(tree, End.MINUS, child), tree.a(1))

    def test_margin(self):
        tree = self.tree
        with self.assertRaises(MarginExceeded):
            check_margin(tree, tree.a(tree.radius + 1))
        with self.assertRaises(MarginExceeded):
            retract_from_end(tree, End.PLUS, tree.a(-tree.radius))
        self.assertTrue(all(tree.edge_distance[v] <= 2 for v in within_margin(tree)))

    def test_busemann_fibers(self):
        tree = self.tree
        for end in End:
            with self.subTest(end=end):
                self.assertEqual(fiber_partition(tree, end), profile_partition(tree, end))

    def test_end_fibers_cover_the_margin(self):
        tree = self.tree
        for end in End:
            with self.subTest(end=end):
                fibers = fiber_partition(tree, end)
                covered = sorted(v for members in fibers.values() for v in members)
                self.assertEqual(covered, within_margin(tree))
                self.assertEqual(uncovered_vertices(tree, end), ())

    def test_compat_witness(self):
        """Test that some alcove of A retracts every vertex like the end does"""
        tree = self.tree
        for end in End:
            for d in within_margin(tree):
                c = compat_witness(tree, end, d)
                with self.subTest(end=end, d=d):
                    self.assertIn(c, tree.apartment_edges)
                    self.assertEqual(retract_at_alcove(tree, c, d), retract_from_end(tree, end, d))
