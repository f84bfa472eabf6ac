"""
Deterministic SVG pictures of rank-2 galleries.

Geometry stays exact until the final projection to the plane; coordinates
are then printed with a fixed number of decimals.
"""
import math
from fractions import Fraction

from django.conf import settings
from django.template.loader import render_to_string

from root_geometry.linalg import solve
from root_geometry.services import fundamental_alcove

from .exceptions import RankUnsupported

SCALE = 40


def coroot_gram(rs):
    """Gram matrix of the simple coroots, normalized to (alpha_1^vee, alpha_1^vee) = 2."""
    a = rs.cartan
    g11 = Fraction(2)
    g22 = g11 * a[0][1] / a[1][0]
    g12 = a[0][1] * g11 / 2
    return g11, g12, g22


class Projection:
    """Level coordinates to picture coordinates through the coroot basis."""

    def __init__(self, rs):
        g11, g12, g22 = coroot_gram(rs)
        self.cartan = rs.cartan
        root11 = math.sqrt(g11)
        self.e1 = (root11, 0.0)
        self.e2 = (float(g12) / root11, math.sqrt(float(g22 - g12 * g12 / g11)))

    def __call__(self, point):
        y1, y2 = solve(self.cartan, point)
        x = float(y1) * self.e1[0] + float(y2) * self.e2[0]
        y = float(y1) * self.e1[1] + float(y2) * self.e2[1]
        return SCALE * x, -SCALE * y


class Canvas:
    def __init__(self, projection, decimals):
        self.projection = projection
        self.decimals = decimals
        self.min_x = self.max_x = self.min_y = self.max_y = None

    def require(self, x, y):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def number(self, value):
        text = f'{value:.{self.decimals}f}'
        # avoid "-0.0000"
        return text[1:] if text.startswith('-') and float(text) == 0 else text

    def point(self, level_point):
        x, y = self.projection(level_point)
        return self.number(x), self.number(y)

    def points(self, level_points):
        return ' '.join(','.join(self.point(p)) for p in level_points)


def _box(gallery):
    coordinates = [v for face in gallery.panels + gallery.alcoves for v in face.vertices]
    lows = [math.floor(min(v[i] for v in coordinates)) - 1 for i in range(2)]
    highs = [math.ceil(max(v[i] for v in coordinates)) + 1 for i in range(2)]
    return lows, highs


def _clip(root, level, lows, highs):
    """End points of the wall <x,root> = level inside the box, or ``None``."""
    c1, c2 = root
    hits = set()
    for x1 in (lows[0], highs[0]):
        if c2 != 0:
            x2 = Fraction(level - c1 * x1, c2)
            if lows[1] <= x2 <= highs[1]:
                hits.add((Fraction(x1), x2))
    for x2 in (lows[1], highs[1]):
        if c1 != 0:
            x1 = Fraction(level - c2 * x2, c1)
            if lows[0] <= x1 <= highs[0]:
                hits.add((x1, Fraction(x2)))
    if len(hits) < 2:
        return None
    ordered = sorted(hits)
    return ordered[0], ordered[-1]


def render_gallery_svg(rs, gallery):
    if rs.rank != 2:
        raise RankUnsupported(f'Only rank-2 systems can be drawn, not {rs.type_label}.')
    decimals = settings.GALLERY_FOLDING['RENDER_DECIMALS']
    canvas = Canvas(Projection(rs), decimals)
    lows, highs = _box(gallery)
    corners = [(Fraction(a), Fraction(b)) for a in (lows[0], highs[0]) for b in (lows[1], highs[1])]
    for corner in corners:
        canvas.require(*canvas.projection(corner))

    walls = []
    for root in rs.positive_roots:
        values = [sum(c * x for c, x in zip(root, corner)) for corner in corners]
        for level in range(math.ceil(min(values)), math.floor(max(values)) + 1):
            ends = _clip(root, level, lows, highs)
            if ends is None:
                continue
            (x1, y1), (x2, y2) = canvas.point(ends[0]), canvas.point(ends[1])
            walls.append({'x1': x1, 'y1': y1, 'x2': x2, 'y2': y2, 'origin': level == 0})

    route = [gallery.panels[0].barycenter]
    for alcove, panel in zip(gallery.alcoves, gallery.panels[1:]):
        route.extend([alcove.barycenter, panel.barycenter])
    folds = [canvas.point(gallery.panels[i].barycenter) for i in gallery.folds]
    start = canvas.point(gallery.panels[0].barycenter)
    end = canvas.point(gallery.panels[-1].barycenter)

    context = {
        'type_label': rs.type_label,
        'view_box': ' '.join(canvas.number(v) for v in (
            canvas.min_x, canvas.min_y, canvas.max_x - canvas.min_x, canvas.max_y - canvas.min_y,
        )),
        'width': canvas.number(canvas.max_x - canvas.min_x),
        'height': canvas.number(canvas.max_y - canvas.min_y),
        'walls': walls,
        'fundamental': canvas.points(fundamental_alcove(rs).vertices),
        'alcoves': [canvas.points(_ring(canvas.projection, alcove)) for alcove in gallery.alcoves],
        'route': canvas.points(route),
        'folds': [{'x': x, 'y': y} for x, y in folds],
        'start': {'x': start[0], 'y': start[1]},
        'end': {'x': end[0], 'y': end[1]},
    }
    return render_to_string('verification/gallery.svg', context)


def _ring(projection, face):
    """Vertices of a triangle in a fixed cyclic order."""
    cx, cy = projection(face.barycenter)

    def angle(vertex):
        x, y = projection(vertex)
        return math.atan2(y - cy, x - cx)

    return sorted(face.vertices, key=angle)
