import logging
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache

from root_geometry.linalg import rank
from root_geometry.models import Hyperplane
from root_geometry.services import (
    affine_reflection,
    alcove_at,
    fundamental_alcove,
    is_vertex,
    vertex_type,
)

from .exceptions import EndpointNotVertex, IndexOutOfRange, InvalidFace, JunctionMismatch
from .models import CombinatorialGallery, Face, GalleryType, Violation, ViolationKind

logger = logging.getLogger(__name__)


def _pairing(root, point):
    return sum((c * x for c, x in zip(root, point)), Fraction(0))


def level_range(face, root):
    return face.level_range(root)


def face_level(face, root):
    """The integer m with ``face`` inside H_{root,m}, else ``None``."""
    return face.level(root)


def weakly_above(face, root, level):
    return level_range(face, root)[0] >= level


def weakly_below(face, root, level):
    return level_range(face, root)[1] <= level


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------

@lru_cache(maxsize=65536)
def face_violations(rs, face):
    """Reasons why ``face`` is not a face of the complex (empty if it is)."""
    reasons = []
    vertices = face.vertices
    if not vertices:
        return ('face has no vertices',)
    if any(len(v) != rs.rank for v in vertices):
        return (f'vertices must have {rs.rank} coordinates',)
    if len(set(vertices)) != len(vertices):
        reasons.append('repeated vertex')
    else:
        base = vertices[0]
        differences = [[a - b for a, b in zip(v, base)] for v in vertices[1:]]
        if differences and rank(differences) != len(differences):
            reasons.append('vertices are affinely dependent')
    for v in vertices:
        if not is_vertex(rs, v):
            reasons.append(f'{Face((v,))} is not a vertex of the complex')
    for root in rs.positive_roots:
        low, high = level_range(face, root)
        if math.ceil(high) - math.floor(low) > 1:
            reasons.append(f'vertices are not in a common strip of {root}')
            break
    return tuple(reasons)


def check_face(rs, face):
    reasons = face_violations(rs, face)
    if reasons:
        raise InvalidFace(f'{face}: ' + '; '.join(reasons))
    return face


def face_type(rs, face):
    return tuple(sorted(vertex_type(rs, v) for v in face.vertices))


def face_of_type(rs, alcove, label):
    """The face of ``alcove`` whose vertex types are ``label``."""
    wanted = set(label)
    return Face(tuple(v for v in alcove.vertices if vertex_type(rs, v) in wanted))


def walls_containing(rs, face):
    walls = []
    for root in rs.positive_roots:
        level = face_level(face, root)
        if level is not None:
            walls.append(Hyperplane(root, level))
    return walls


def panel_wall(rs, panel):
    """The wall spanned by a codimension-one face."""
    walls = walls_containing(rs, panel)
    if not walls:
        raise InvalidFace(f'{panel} lies on no wall.')
    return walls[0]


def reflect_across(rs, face, panel):
    wall = panel_wall(rs, panel)
    return face.map(affine_reflection(rs, wall.root, wall.level))


def fold_is_positive(rs, alcove, panel):
    """A fold at ``panel`` is positive when ``alcove`` lies on the positive side of its wall."""
    wall = panel_wall(rs, panel)
    return weakly_above(alcove, wall.root, wall.level)


def alcoves_containing(rs, face):
    """The star of ``face``: all alcoves having it as a face, sorted."""
    start = alcove_at(rs, face.barycenter)
    seen = {start}
    queue = deque([start])
    while queue:
        alcove = queue.popleft()
        for panel in alcove.facets():
            if not face.is_face_of(panel):
                continue
            neighbour = reflect_across(rs, alcove, panel)
            if neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    return sorted(seen)


def alcove_window(rs, radius):
    """Alcoves reachable from the fundamental alcove by at most ``radius`` crossings."""
    start = fundamental_alcove(rs)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        alcove = queue.popleft()
        if seen[alcove] == radius:
            continue
        for panel in alcove.facets():
            neighbour = reflect_across(rs, alcove, panel)
            if neighbour not in seen:
                seen[neighbour] = seen[alcove] + 1
                queue.append(neighbour)
    return sorted(seen)


def _interior_below(low, high, level):
    return high < level or (high == level and low < high)


def separating_walls(rs, first, second):
    """Walls with the relative interiors of ``first`` and ``second`` on opposite open sides."""
    walls = []
    for root in rs.positive_roots:
        range1, range2 = level_range(first, root), level_range(second, root)
        if range1[1] > range2[0]:
            range1, range2 = range2, range1
        for level in range(math.floor(range1[1]), math.ceil(range2[0]) + 1):
            below = _interior_below(*range1, level)
            above = _interior_below(-range2[1], -range2[0], -level)
            if below and above:
                walls.append(Hyperplane(root, level))
    return walls


# ---------------------------------------------------------------------------
# Galleries
# ---------------------------------------------------------------------------

def validate(rs, gallery):
    """All violations of the gallery axioms; an empty list means valid."""
    panels, alcoves = gallery.panels, gallery.alcoves
    if len(panels) != len(alcoves) + 1:
        return [Violation(
            ViolationKind.SHAPE, 0,
            f'{len(panels)} panels for {len(alcoves)} alcoves',
        )]
    violations = []
    for i, panel in enumerate(panels):
        for reason in face_violations(rs, panel):
            violations.append(Violation(ViolationKind.INVALID_FACE, i, f'panel p_{i}: {reason}'))
    for i, alcove in enumerate(alcoves):
        for reason in face_violations(rs, alcove):
            violations.append(Violation(ViolationKind.INVALID_FACE, i, f'alcove c_{i}: {reason}'))
        if alcove.dimension != alcoves[0].dimension:
            violations.append(Violation(
                ViolationKind.DIMENSION_MISMATCH, i,
                f'c_{i} has dimension {alcove.dimension}, c_0 has {alcoves[0].dimension}',
            ))
    for i, panel in enumerate(panels):
        neighbours = [j for j in (i - 1, i) if 0 <= j < len(alcoves)]
        for j in neighbours:
            if not panel.is_face_of(alcoves[j]):
                violations.append(Violation(
                    ViolationKind.PANEL_NOT_FACE, i, f'p_{i} = {panel} is not a face of c_{j} = {alcoves[j]}',
                ))
                break
        else:
            if len(neighbours) == 2 and panel.dimension != alcoves[i].dimension - 1:
                violations.append(Violation(
                    ViolationKind.PANEL_CODIMENSION, i, f'p_{i} = {panel} is not a facet of c_{i}',
                ))
    return violations


def is_valid(rs, gallery):
    return not validate(rs, gallery)


def split(gallery, k):
    if not 0 <= k <= gallery.length:
        raise IndexOutOfRange(f'Cannot split a gallery of length {gallery.length} at {k}.')
    head = CombinatorialGallery(gallery.panels[:k + 1], gallery.alcoves[:k])
    tail = CombinatorialGallery(gallery.panels[k:], gallery.alcoves[k:])
    return head, tail


def concat(*galleries):
    result = galleries[0]
    for following in galleries[1:]:
        if result.end != following.start:
            raise JunctionMismatch(f'{result.end} does not match {following.start}.')
        result = CombinatorialGallery(
            result.panels + following.panels[1:],
            result.alcoves + following.alcoves,
        )
    return result


def apply_map(isometry, gallery):
    return CombinatorialGallery(
        tuple(p.map(isometry) for p in gallery.panels),
        tuple(c.map(isometry) for c in gallery.alcoves),
    )


def weight(gallery):
    if gallery.end.dimension != 0:
        raise EndpointNotVertex(f'The gallery ends in {gallery.end}.')
    return gallery.end.vertices[0]


def gallery_type(rs, gallery):
    labels = [face_type(rs, gallery.panels[0])]
    for alcove, panel in zip(gallery.alcoves, gallery.panels[1:]):
        labels.append(face_type(rs, alcove))
        labels.append(face_type(rs, panel))
    return GalleryType(tuple(labels))


def crossing_count(gallery):
    return sum(1 for i in range(1, gallery.length) if gallery.alcoves[i - 1] != gallery.alcoves[i])


def is_positively_folded(rs, gallery):
    """Every fold keeps its alcove in the closed half-space H+ of the folding wall."""
    return all(
        fold_is_positive(rs, gallery.alcoves[i], gallery.panels[i])
        for i in gallery.folds
    )


def alcove_walk(rs, start, target):
    """
    Alcoves from ``start`` to ``target``, each step crossing one wall that
    separates the current alcove from the target.

    Among the candidate walls the one with the smallest (root index, level)
    is crossed first.
    """
    walk = [start]
    current = start
    destination = target.barycenter
    while current != target:
        here = current.barycenter
        candidates = []
        for panel in current.facets():
            wall = panel_wall(rs, panel)
            side_here = _pairing(wall.root, here) - wall.level
            side_there = _pairing(wall.root, destination) - wall.level
            if side_here * side_there < 0:
                candidates.append((rs.root_index(wall.root), wall.level, panel))
        _, _, panel = min(candidates, key=lambda item: item[:2])
        current = reflect_across(rs, current, panel)
        walk.append(current)
    return walk


def gallery_through(alcoves, start, end):
    """Gallery with the given alcoves; interior panels are the shared facets."""
    panels = [start]
    for previous, following in zip(alcoves, alcoves[1:]):
        panels.append(previous.meet(following))
    panels.append(end)
    return CombinatorialGallery(tuple(panels), tuple(alcoves))


def minimal_gallery(rs, start, end):
    """A minimal gallery from face ``start`` to face ``end``."""
    if start == end:
        return CombinatorialGallery.trivial(start)
    toward_end = tuple(a - b for a, b in zip(end.barycenter, start.barycenter))
    toward_start = tuple(-c for c in toward_end)
    first = alcove_at(rs, start.barycenter, toward_end)
    last = alcove_at(rs, end.barycenter, toward_start)
    walk = alcove_walk(rs, first, last)
    logger.debug('Minimal gallery %s -> %s has %d alcoves', start, end, len(walk))
    return gallery_through(walk, start, end)
