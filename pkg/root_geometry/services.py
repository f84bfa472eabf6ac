import logging
import math
from collections import deque
from fractions import Fraction
from functools import lru_cache

from gallery.models import Face

from .exceptions import ForeignRoot, NotCoweight, NotVertex, UnsupportedType
from .linalg import identity_matrix, rank, solve
from .models import AffineIsometry, Hyperplane, IsometryKind, RootSystem, Sign, as_point

logger = logging.getLogger(__name__)

# A_ij = <alpha_j^vee, alpha_i>, Bourbaki numbering.
CARTAN_MATRICES = {
    'A1': ((2,),),
    'A2': ((2, -1), (-1, 2)),
    'A3': ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    'B2': ((2, -2), (-1, 2)),
    'C2': ((2, -1), (-2, 2)),
    'G2': ((2, -1), (-3, 2)),
}


def _simple_coroot(cartan, i):
    return tuple(Fraction(cartan[row][i]) for row in range(len(cartan)))


def _reflect_root(cartan, i, root):
    # <alpha_i^vee, beta> = sum_j c_j A_ji
    coefficient = sum(c * cartan[j][i] for j, c in enumerate(root))
    return tuple(c - coefficient * int(j == i) for j, c in enumerate(root))


def _reflect_coroot(cartan, i, coroot):
    level = coroot[i]
    column = _simple_coroot(cartan, i)
    return tuple(x - level * a for x, a in zip(coroot, column))


@lru_cache(maxsize=None)
def build_root_system(type_label):
    """
    Build a root system from its Cartan matrix by reflection closure.

    Coroots are carried along the closure, so ``coroots[r]`` is the coroot
    of ``positive_roots[r]`` in level coordinates.
    """
    if type_label not in CARTAN_MATRICES:
        raise UnsupportedType(f'Unsupported root system type: {type_label!r}.')
    cartan = CARTAN_MATRICES[type_label]
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = {root: _simple_coroot(cartan, i) for i, root in enumerate(simple)}
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for i in range(n):
            image = _reflect_root(cartan, i, root)
            if any(c < 0 for c in image) or image in found:
                continue
            found[image] = _reflect_coroot(cartan, i, found[root])
            queue.append(image)

    ordered = sorted(found, key=lambda root: (sum(root), tuple(-c for c in root)))
    highest = max(ordered, key=sum)
    logger.debug('Built %s with %d positive roots', type_label, len(ordered))
    return RootSystem(
        type_label=type_label,
        rank=n,
        cartan=cartan,
        positive_roots=tuple(ordered),
        coroots=tuple(found[root] for root in ordered),
        highest_root=highest,
    )


def _check_root(rs, alpha):
    if not rs.is_root(alpha):
        raise ForeignRoot(f'{tuple(alpha)} is not a root of {rs.type_label}.')


def pairing(rs, x, alpha):
    """<x, alpha> = sum c_i x_i."""
    _check_root(rs, alpha)
    return sum((Fraction(c) * Fraction(v) for c, v in zip(alpha, x)), Fraction(0))


def _pairing(alpha, x):
    return sum((c * v for c, v in zip(alpha, x)), Fraction(0))


def affine_reflection(rs, alpha, m):
    """s_{alpha,m}(x) = x - (<x,alpha> - m) alpha^vee."""
    return _affine_reflection(rs, tuple(alpha), m)


@lru_cache(maxsize=4096)
def _affine_reflection(rs, alpha, m):
    _check_root(rs, alpha)
    coroot = rs.coroot(alpha)
    n = rs.rank
    linear = tuple(
        tuple(Fraction(int(i == j)) - coroot[i] * alpha[j] for j in range(n))
        for i in range(n)
    )
    offset = tuple(Fraction(m) * c for c in coroot)
    wall = Hyperplane.of(alpha, m)
    return AffineIsometry(linear, offset, IsometryKind.REFLECTION, f's{wall}')


def translate(rs, coweight):
    """Translation by an element of the coroot lattice."""
    coweight = as_point(coweight)
    if len(coweight) != rs.rank:
        raise NotCoweight(f'{coweight} has the wrong number of coordinates.')
    coefficients = solve(rs.cartan, coweight)
    if coefficients is None or any(c.denominator != 1 for c in coefficients):
        raise NotCoweight(f'{tuple(map(str, coweight))} is not in the coroot lattice.')
    if not any(coweight):
        return AffineIsometry.identity(rs.rank)
    label = 't(' + ','.join(map(str, coweight)) + ')'
    return AffineIsometry(identity_matrix(rs.rank), coweight, IsometryKind.TRANSLATION, label)


def coroot_translation(rs, alpha, sign=1):
    return _coroot_translation(rs, tuple(alpha), sign)


@lru_cache(maxsize=256)
def _coroot_translation(rs, alpha, sign):
    return translate(rs, tuple(sign * c for c in rs.coroot(alpha)))


def position_sign(rs, x, wall):
    difference = pairing(rs, x, wall.root) - wall.level
    if difference > 0:
        return Sign.POSITIVE
    if difference < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


def fundamental_vertices(rs):
    """Origin first, then the vertex opposite to the wall of alpha_i."""
    vertices = [rs.origin]
    for i, c in enumerate(rs.highest_root):
        vertices.append(tuple(Fraction(1, c) if j == i else Fraction(0) for j in range(rs.rank)))
    return tuple(vertices)


def fundamental_alcove(rs):
    return Face(fundamental_vertices(rs))


def fundamental_walls(rs):
    """
    Walls of the fundamental alcove as (wall, inward sign), ordered by
    (root index, level).
    """
    walls = [(Hyperplane.of(root, 0), 1) for root in rs.simple_roots]
    walls.append((Hyperplane.of(rs.highest_root, 1), -1))
    return sorted(walls, key=lambda item: (rs.root_index(item[0].root), item[0].level))


def fold_point(rs, x):
    """
    Fold ``x`` into the closed fundamental alcove.

    Returns the folded point and the reflections applied, in order.
    """
    walls = fundamental_walls(rs)
    point = as_point(x)
    applied = []
    while True:
        for wall, inward in walls:
            if inward * (_pairing(wall.root, point) - wall.level) < 0:
                reflection = affine_reflection(rs, wall.root, wall.level)
                point = reflection(point)
                applied.append(reflection)
                break
        else:
            return point, applied


def _type_lookup(rs):
    return {vertex: index for index, vertex in enumerate(fundamental_vertices(rs))}


@lru_cache(maxsize=65536)
def vertex_type(rs, vertex):
    """Index of the fundamental alcove vertex in the affine Weyl orbit of ``vertex``."""
    folded, _ = fold_point(rs, vertex)
    lookup = _type_lookup(rs)
    if folded not in lookup:
        raise NotVertex(f'{tuple(map(str, vertex))} is not a vertex of the complex.')
    return lookup[folded]


@lru_cache(maxsize=65536)
def is_vertex(rs, x):
    integral = [root for root in rs.positive_roots if _pairing(root, x).denominator == 1]
    return bool(integral) and rank(integral) == rs.rank


def _default_direction(rs):
    # rho^vee pairs with every positive root by its height
    return (Fraction(1),) * rs.rank


def perturbation(rs, x, direction=None):
    """
    A point z = x + eps*d in the interior of the alcove entered from ``x``
    in ``direction``; ties are broken toward the dominant chamber.
    """
    x = as_point(x)
    dominant = _default_direction(rs)
    if direction is None or not any(direction):
        d = dominant
    else:
        direction = as_point(direction)
        bounds = [
            abs(_pairing(root, direction)) / (2 * rs.height(root))
            for root in rs.positive_roots if _pairing(root, direction) != 0
        ]
        eta = min(bounds)
        d = tuple(a + eta * b for a, b in zip(direction, dominant))
    eps = Fraction(1)
    for root in rs.positive_roots:
        value = _pairing(root, x)
        if value.denominator == 1:
            gap = Fraction(1)
        else:
            gap = min(value - math.floor(value), math.ceil(value) - value)
        eps = min(eps, gap / (2 * (abs(_pairing(root, d)) + 1)))
    return tuple(a + eps * b for a, b in zip(x, d))


def alcove_at(rs, x, direction=None):
    """The alcove whose closure contains ``x`` and which is entered toward ``direction``."""
    z = perturbation(rs, x, direction)
    _, applied = fold_point(rs, z)
    alcove = fundamental_alcove(rs)
    for reflection in reversed(applied):
        alcove = alcove.map(reflection)
    return alcove


def barycentric(face, x):
    """Barycentric coordinates of ``x`` in the affine hull of ``face``, or ``None``."""
    vertices = face.vertices
    n = len(x)
    matrix = [[vertex[i] for vertex in vertices] for i in range(n)]
    matrix.append([Fraction(1)] * len(vertices))
    return solve(matrix, tuple(x) + (Fraction(1),))


def contains_point(face, x):
    coordinates = barycentric(face, x)
    return coordinates is not None and all(c >= 0 for c in coordinates)


def support_face(rs, x):
    """The unique face containing ``x`` in its relative interior."""
    alcove = alcove_at(rs, x)
    coordinates = barycentric(alcove, x)
    return Face(tuple(v for v, c in zip(alcove.vertices, coordinates) if c > 0))
