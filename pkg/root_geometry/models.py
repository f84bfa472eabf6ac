from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from django.db import models

from .exceptions import ForeignRoot
from .linalg import identity_matrix, mat_mul, mat_vec

# Points are tuples of exact level coordinates x_i = <x, alpha_i>.
Point = tuple
Root = tuple


def as_point(values):
    return tuple(Fraction(value) for value in values)


class SupportedType(models.TextChoices):
    A1 = 'A1', 'A1'
    A2 = 'A2', 'A2'
    A3 = 'A3', 'A3'
    B2 = 'B2', 'B2'
    C2 = 'C2', 'C2'
    G2 = 'G2', 'G2'


class Sign(models.IntegerChoices):
    NEGATIVE = -1, '-'
    ZERO = 0, '0'
    POSITIVE = 1, '+'


class IsometryKind(models.TextChoices):
    IDENTITY = 'identity', 'Identity'
    REFLECTION = 'reflection', 'Reflection'
    TRANSLATION = 'translation', 'Translation'
    COMPOSITION = 'composition', 'Composition'


@dataclass(frozen=True)
class RootSystem:
    """
    Irreducible crystallographic root system of rank at most 3.

    Roots are integer coefficient tuples over the simple roots. ``coroots``
    holds, aligned with ``positive_roots``, the level coordinates of each
    coroot. Two root systems compare equal when their labels do.
    """
    type_label: str
    rank: int = field(compare=False)
    cartan: tuple = field(compare=False, repr=False)
    positive_roots: tuple = field(compare=False, repr=False)
    coroots: tuple = field(compare=False, repr=False)
    highest_root: Root = field(compare=False, repr=False)

    @cached_property
    def _root_lookup(self):
        return {root: index for index, root in enumerate(self.positive_roots)}

    @property
    def origin(self):
        return (Fraction(0),) * self.rank

    @property
    def simple_roots(self):
        return self.positive_roots[:self.rank]

    def simple_root(self, i):
        """Simple root alpha_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise ForeignRoot(f'{self.type_label} has no simple root alpha_{i}.')
        return self.positive_roots[i - 1]

    def is_root(self, alpha):
        alpha = tuple(alpha)
        return alpha in self._root_lookup or tuple(-c for c in alpha) in self._root_lookup

    def is_simple(self, alpha):
        return tuple(alpha) in self.simple_roots

    def root_index(self, alpha):
        """Index of the positive root +-alpha in ``positive_roots``."""
        alpha = tuple(alpha)
        if alpha in self._root_lookup:
            return self._root_lookup[alpha]
        negated = tuple(-c for c in alpha)
        if negated in self._root_lookup:
            return self._root_lookup[negated]
        raise ForeignRoot(f'{alpha} is not a root of {self.type_label}.')

    def coroot(self, alpha):
        alpha = tuple(alpha)
        coroot = self.coroots[self.root_index(alpha)]
        if alpha in self._root_lookup:
            return coroot
        return tuple(-c for c in coroot)

    def height(self, alpha):
        return sum(alpha)

    def __str__(self):
        return self.type_label


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The wall H_{alpha,m}; always stored with a positive root."""
    root: Root
    level: int

    @classmethod
    def of(cls, root, level):
        root = tuple(root)
        if all(c <= 0 for c in root):
            return cls(tuple(-c for c in root), -int(level))
        return cls(root, int(level))

    def __str__(self):
        return f'H({",".join(map(str, self.root))};{self.level})'


@dataclass(frozen=True)
class AffineIsometry:
    """x -> linear @ x + offset on level coordinates."""
    linear: tuple
    offset: Point
    kind: str = field(default=IsometryKind.COMPOSITION, compare=False)
    label: str = field(default='', compare=False)

    @classmethod
    def identity(cls, n):
        return cls(identity_matrix(n), (Fraction(0),) * n, IsometryKind.IDENTITY, 'id')

    def __call__(self, point):
        image = mat_vec(self.linear, point)
        return tuple(a + b for a, b in zip(image, self.offset))

    def compose(self, other):
        """``self`` after ``other``."""
        if other.kind == IsometryKind.IDENTITY:
            return self
        if self.kind == IsometryKind.IDENTITY:
            return other
        linear = mat_mul(self.linear, other.linear)
        offset = tuple(a + b for a, b in zip(mat_vec(self.linear, other.offset), self.offset))
        return AffineIsometry(linear, offset, IsometryKind.COMPOSITION,
                              f'{self.label}*{other.label}')

    @property
    def is_identity(self):
        n = len(self.offset)
        return self.linear == identity_matrix(n) and not any(self.offset)

    def __str__(self):
        return self.label or self.kind
