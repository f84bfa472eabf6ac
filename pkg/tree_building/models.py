from dataclasses import dataclass
from functools import cached_property

from django.db import models


class End(models.TextChoices):
    PLUS = '+', 'xi+'
    MINUS = '-', 'xi-'


@dataclass(frozen=True)
class TreeBuilding:
    """
    The ball of radius ``radius`` around the base edge (a_0, a_1) in the
    (q+1)-regular tree.

    Vertex ids 0..2R+1 are the apartment vertices a_{-R}..a_{R+1}.
    ``parent`` points toward a_0 and ``depth`` is the distance to a_0.
    """
    q: int
    radius: int
    adjacency: tuple
    parent: tuple
    depth: tuple
    edge_distance: tuple

    @property
    def size(self):
        return len(self.adjacency)

    @property
    def apartment(self):
        return tuple(range(2 * self.radius + 2))

    def a(self, index):
        """Vertex id of a_index."""
        return index + self.radius

    def apartment_index(self, vertex):
        if vertex < 2 * self.radius + 2:
            return vertex - self.radius
        return None

    @property
    def base_edge(self):
        return (self.a(0), self.a(1))

    def end_vertex(self, end):
        return self.a(self.radius + 1) if end == End.PLUS else self.a(-self.radius)

    def degree(self, vertex):
        return len(self.adjacency[vertex])

    def is_leaf(self, vertex):
        return self.degree(vertex) == 1

    @cached_property
    def apartment_edges(self):
        return tuple((self.a(i), self.a(i + 1)) for i in range(-self.radius, self.radius + 1))


@dataclass(frozen=True)
class TreeApartment:
    """A leaf-to-leaf geodesic of the truncated tree."""
    vertices: tuple

    def position(self, vertex):
        return self.vertices.index(vertex)

    def __contains__(self, vertex):
        return vertex in self.vertices
