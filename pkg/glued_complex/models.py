from dataclasses import dataclass

from django.db import models


class ChartKind(models.TextChoices):
    BASE = 'base', 'Base'
    LOWER = 'lower', 'Lower'
    FOLDED = 'folded', 'Folded'


class Direction(models.TextChoices):
    ANTIDOMINANT = 'antidominant', 'Antidominant'
    DOMINANT = 'dominant', 'Dominant'


class HalfSpace(models.TextChoices):
    POSITIVE = '+', 'H+'
    NEGATIVE = '-', 'H-'


@dataclass(frozen=True)
class ChartId:
    """
    Base is the standard apartment. Lower(alpha,k) shares H-_{alpha,k} with
    Base; Folded(alpha,k) is the Lower branch glued to the upper half of Base.
    """
    kind: str
    root: tuple = None
    level: int = None

    @classmethod
    def base(cls):
        return cls(ChartKind.BASE)

    @classmethod
    def lower(cls, root, level):
        return cls(ChartKind.LOWER, tuple(root), int(level))

    @classmethod
    def folded(cls, root, level):
        return cls(ChartKind.FOLDED, tuple(root), int(level))

    @property
    def is_base(self):
        return self.kind == ChartKind.BASE

    def __str__(self):
        if self.is_base:
            return 'Base'
        return f'{ChartKind(self.kind).label}({",".join(map(str, self.root))};{self.level})'


@dataclass(frozen=True)
class LabeledFace:
    chart: ChartId
    face: object

    def __str__(self):
        return f'{self.chart}:{self.face}'


@dataclass(frozen=True)
class LabeledGallery:
    panels: tuple
    alcoves: tuple = ()

    @classmethod
    def in_chart(cls, gallery, chart):
        return cls(
            tuple(LabeledFace(chart, p) for p in gallery.panels),
            tuple(LabeledFace(chart, c) for c in gallery.alcoves),
        )

    def map(self, function):
        return LabeledGallery(
            tuple(function(p) for p in self.panels),
            tuple(function(c) for c in self.alcoves),
        )


@dataclass(frozen=True)
class FoldingAutomorphism:
    """Building automorphism fixing the half-apartment ``fixed_half`` of (root, level)."""
    root: tuple
    level: int
    fixed_half: str

    def opposite(self):
        other = HalfSpace.NEGATIVE if self.fixed_half == HalfSpace.POSITIVE else HalfSpace.POSITIVE
        return FoldingAutomorphism(self.root, self.level, other)
