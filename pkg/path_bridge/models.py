from dataclasses import dataclass
from fractions import Fraction

from root_geometry.models import as_point


@dataclass(frozen=True)
class Segment:
    """t -> start + t (end - start) for t in [0, 1]."""
    start: tuple
    end: tuple

    def __post_init__(self):
        object.__setattr__(self, 'start', as_point(self.start))
        object.__setattr__(self, 'end', as_point(self.end))

    @property
    def direction(self):
        return tuple(b - a for a, b in zip(self.start, self.end))

    def at(self, t):
        t = Fraction(t)
        return tuple(a + t * d for a, d in zip(self.start, self.direction))


@dataclass(frozen=True)
class Piece:
    """The parameter interval [t0, t1] runs inside alcove ``alcove_index``."""
    t0: Fraction
    t1: Fraction
    alcove_index: int


@dataclass(frozen=True)
class PiecewiseLinearPath:
    points: tuple

    @property
    def start(self):
        return self.points[0]

    @property
    def end(self):
        return self.points[-1]


@dataclass(frozen=True)
class Embedding:
    segment: Segment
    gallery: object
    pieces: tuple


@dataclass(frozen=True)
class PushedPath:
    path: PiecewiseLinearPath
    gallery: object
    pieces: tuple
