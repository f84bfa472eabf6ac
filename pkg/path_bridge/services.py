import logging
import math
from collections import deque
from fractions import Fraction

from folding.exceptions import InconsistentBlocks
from folding.services import apply_blocks, block_maps, require_indices
from gallery.models import CombinatorialGallery
from gallery.services import alcoves_containing
from root_geometry.linalg import rank
from root_geometry.models import AffineIsometry
from root_geometry.services import contains_point, support_face

from .models import Embedding, Piece, PiecewiseLinearPath, PushedPath

logger = logging.getLogger(__name__)


def _pairing(root, point):
    return sum(c * x for c, x in zip(root, point))


def _walls_along(rs, segment):
    """Positive roots whose walls contain the whole segment."""
    return [
        root for root in rs.positive_roots
        if _pairing(root, segment.direction) == 0
        and _pairing(root, segment.start).denominator == 1
    ]


def crossing_parameters(rs, segment):
    """Sorted parameters 0 = t_0 < ... < t_r = 1 of all wall crossings."""
    parameters = {Fraction(0), Fraction(1)}
    start, direction = segment.start, segment.direction
    for root in rs.positive_roots:
        slope = _pairing(root, direction)
        if slope == 0:
            continue
        origin = _pairing(root, start)
        low, high = sorted((origin, origin + slope))
        for level in range(math.floor(low) + 1, math.ceil(high)):
            parameters.add((level - origin) / slope)
    return sorted(parameters)


def _in_subspace(face, walls, reference):
    return all(
        _pairing(root, v) == _pairing(root, reference)
        for root in walls for v in face.vertices
    )


def _star_walk(rs, start, goal, centre, walls, reference):
    """Shortest walk of faces of dimension dim(start) around ``centre``."""
    dimension = start.dimension
    candidates = sorted({
        face
        for alcove in alcoves_containing(rs, centre)
        for face in alcove.faces(dimension)
        if centre.is_face_of(face) and _in_subspace(face, walls, reference)
    })
    previous = {start: None}
    queue = deque([start])
    while queue:
        face = queue.popleft()
        if face == goal:
            break
        for other in candidates:
            if other in previous:
                continue
            if len(set(face.vertices) & set(other.vertices)) == dimension:
                previous[other] = face
                queue.append(other)
    walk = [goal]
    while previous[walk[-1]] is not None:
        walk.append(previous[walk[-1]])
    return walk[::-1]


def embed(rs, segment):
    """A minimal gallery whose closed faces cover the segment, with its pieces."""
    if segment.start == segment.end:
        face = support_face(rs, segment.start)
        return Embedding(segment, CombinatorialGallery.trivial(face), ())

    walls = _walls_along(rs, segment)
    parameters = crossing_parameters(rs, segment)
    supports = [support_face(rs, segment.at(t)) for t in parameters]
    interiors = [
        support_face(rs, segment.at((a + b) / 2))
        for a, b in zip(parameters, parameters[1:])
    ]
    dimension = rs.rank - (rank(walls) if walls else 0)

    panels, alcoves = [supports[0]], [interiors[0]]
    pieces = [Piece(parameters[0], parameters[1], 0)]
    for a in range(1, len(parameters) - 1):
        centre, following = supports[a], interiors[a]
        current = alcoves[-1]
        if centre.dimension == dimension - 1:
            panels.append(centre)
            alcoves.append(following)
        else:
            walk = _star_walk(rs, current, following, centre, walls, segment.start)
            for face in walk[1:]:
                panels.append(alcoves[-1].meet(face))
                alcoves.append(face)
        pieces.append(Piece(parameters[a], parameters[a + 1], len(alcoves) - 1))
    panels.append(supports[-1])
    gallery = CombinatorialGallery(tuple(panels), tuple(alcoves))
    logger.debug('Embedded %s into %d faces of dimension %d', segment, len(alcoves), dimension)
    return Embedding(segment, gallery, tuple(pieces))


def embed_segment(rs, segment):
    return embed(rs, segment).gallery


def push_through(rs, segment, operations):
    """
    Image of the segment under a sequence of (operator, simple root)
    applied to its embedding gallery.
    """
    embedding = embed(rs, segment)
    gallery = embedding.gallery
    maps = [AffineIsometry.identity(rs.rank)] * gallery.length
    for operator, alpha in operations:
        indices = require_indices(rs, gallery, alpha, operator)
        blocks, _ = block_maps(rs, gallery, indices)
        gallery = apply_blocks(gallery, blocks)
        maps = [block.compose(current) for block, current in zip(blocks, maps)]

    if not embedding.pieces:
        path = PiecewiseLinearPath((segment.start, segment.end))
        return PushedPath(path, gallery, ())
    first = embedding.pieces[0]
    points = [maps[first.alcove_index](segment.at(first.t0))]
    for piece in embedding.pieces:
        isometry = maps[piece.alcove_index]
        if isometry(segment.at(piece.t0)) != points[-1]:
            raise InconsistentBlocks(f'The pushed path breaks at t = {piece.t0}.')
        points.append(isometry(segment.at(piece.t1)))
    return PushedPath(PiecewiseLinearPath(tuple(points)), gallery, embedding.pieces)


def path_in_gallery(pushed, samples=10):
    """Every sampled point of every piece lies in the closed face carrying it."""
    for index, piece in enumerate(pushed.pieces):
        face = pushed.gallery.alcoves[piece.alcove_index]
        start, end = pushed.path.points[index], pushed.path.points[index + 1]
        for s in range(samples + 1):
            point = tuple(a + (b - a) * Fraction(s, samples) for a, b in zip(start, end))
            if not contains_point(face, point):
                return False
    return True
