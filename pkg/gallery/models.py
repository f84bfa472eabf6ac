from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from django.db import models


def _format_point(point):
    if len(point) == 1:
        return str(point[0])
    return '(' + ','.join(str(c) for c in point) + ')'


@dataclass(frozen=True, order=True)
class Face:
    """A simplex of the standard apartment, stored as its sorted vertex tuple."""
    vertices: tuple

    def __post_init__(self):
        normalized = tuple(sorted(
            tuple(c if type(c) is Fraction else Fraction(c) for c in v) for v in self.vertices
        ))
        object.__setattr__(self, 'vertices', normalized)

    @classmethod
    def of(cls, *points):
        return cls(tuple(points))

    @property
    def dimension(self):
        return len(self.vertices) - 1

    @cached_property
    def _levels(self):
        return {}

    def level_range(self, root):
        """(min, max) of <v, root> over the vertices."""
        root = tuple(root)
        cached = self._levels.get(root)
        if cached is None:
            values = [sum((c * x for c, x in zip(root, v)), Fraction(0)) for v in self.vertices]
            cached = self._levels[root] = (min(values), max(values))
        return cached

    def level(self, root):
        """The integer m with the face inside H_{root,m}, else ``None``."""
        low, high = self.level_range(root)
        if low == high and low.denominator == 1:
            return int(low)
        return None

    @property
    def barycenter(self):
        count = len(self.vertices)
        return tuple(sum(coords, Fraction(0)) / count for coords in zip(*self.vertices))

    def is_face_of(self, other):
        return set(self.vertices) <= set(other.vertices)

    def faces(self, dimension):
        return tuple(Face(c) for c in combinations(self.vertices, dimension + 1))

    def facets(self):
        return self.faces(self.dimension - 1)

    def meet(self, other):
        return Face(tuple(v for v in self.vertices if v in set(other.vertices)))

    def map(self, isometry):
        return Face(tuple(isometry(v) for v in self.vertices))

    def __str__(self):
        if len(self.vertices) == 1:
            return _format_point(self.vertices[0])
        return '[' + ','.join(_format_point(v) for v in self.vertices) + ']'


@dataclass(frozen=True)
class CombinatorialGallery:
    """
    Panels p_0..p_L interleaved with alcoves c_0..c_{L-1}.

    The trivial gallery has one panel and no alcoves.
    """
    panels: tuple
    alcoves: tuple = ()

    @classmethod
    def trivial(cls, face):
        return cls((face,), ())

    @property
    def length(self):
        return len(self.alcoves)

    @property
    def start(self):
        return self.panels[0]

    @property
    def end(self):
        return self.panels[-1]

    @cached_property
    def _panel_levels(self):
        return {}

    def panel_levels(self, root):
        """Wall level of each panel for ``root``; ``None`` where a panel lies on no such wall."""
        root = tuple(root)
        cached = self._panel_levels.get(root)
        if cached is None:
            cached = self._panel_levels[root] = tuple(panel.level(root) for panel in self.panels)
        return cached

    @property
    def folds(self):
        """Panel indices i at which c_{i-1} == c_i."""
        return tuple(
            i for i in range(1, len(self.alcoves))
            if self.alcoves[i - 1] == self.alcoves[i]
        )

    @property
    def sort_key(self):
        return (
            tuple(p.vertices for p in self.panels),
            tuple(c.vertices for c in self.alcoves),
        )

    def __str__(self):
        parts = [str(self.panels[0])]
        for alcove, panel in zip(self.alcoves, self.panels[1:]):
            parts.extend(['<', str(alcove), '>', str(panel)])
        return '(' + ' '.join(parts) + ')'


@dataclass(frozen=True)
class GalleryType:
    """Vertex-type sets of p_0, c_0, p_1, ..., c_{L-1}, p_L."""
    labels: tuple

    @property
    def panel_labels(self):
        return self.labels[0::2]

    @property
    def alcove_labels(self):
        return self.labels[1::2]

    def __str__(self):
        return ' '.join('{' + ','.join(map(str, label)) + '}' for label in self.labels)


class ViolationKind(models.TextChoices):
    SHAPE = 'Shape', 'Panel/alcove count mismatch'
    INVALID_FACE = 'InvalidFace', 'Not a face of the complex'
    DIMENSION_MISMATCH = 'DimensionMismatch', 'Alcoves of unequal dimension'
    PANEL_NOT_FACE = 'PanelNotFace', 'Panel is not a face of its neighbours'
    PANEL_CODIMENSION = 'PanelCodimension', 'Interior panel is not of codimension one'
    UNASSIGNED_ALCOVE = 'UnassignedAlcove', 'Alcove left unassigned'


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int
    detail: str = field(default='', compare=False)

    def as_dict(self):
        return {'kind': str(self.kind), 'index': self.index, 'detail': self.detail}

    def __str__(self):
        return f'{self.kind} at {self.index}: {self.detail}'


@dataclass(frozen=True)
class GalleryDocument:
    type_label: str
    galleries: tuple = ()

    @property
    def root_system(self):
        from root_geometry.services import build_root_system

        return build_root_system(self.type_label)
