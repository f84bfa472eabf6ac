import logging
from collections import defaultdict, deque
from itertools import combinations

from django.conf import settings

from .exceptions import BudgetExceeded, InvalidTreeParameters, MarginExceeded, NoWitness
from .models import End, TreeApartment, TreeBuilding

logger = logging.getLogger(__name__)


def build_tree(q, radius):
    """Breadth-first construction of the truncated (q+1)-regular tree."""
    max_radius = settings.GALLERY_FOLDING['TREE_MAX_RADIUS']
    if radius > max_radius:
        raise BudgetExceeded(f'Radius {radius} exceeds the budget of {max_radius}.')
    if q < 2 or radius < 1:
        raise InvalidTreeParameters(f'Cannot build a tree with q={q}, radius={radius}.')

    adjacency = defaultdict(list)
    edge_distance = {}
    apartment = list(range(2 * radius + 2))
    for vertex, following in zip(apartment, apartment[1:]):
        adjacency[vertex].append(following)
        adjacency[following].append(vertex)
    for vertex in apartment:
        index = vertex - radius
        edge_distance[vertex] = -index if index <= 0 else index - 1

    queue = deque(sorted(apartment, key=lambda v: (edge_distance[v], v)))
    next_id = len(apartment)
    while queue:
        vertex = queue.popleft()
        if edge_distance[vertex] >= radius:
            continue
        while len(adjacency[vertex]) < q + 1:
            child = next_id
            next_id += 1
            adjacency[vertex].append(child)
            adjacency[child].append(vertex)
            edge_distance[child] = edge_distance[vertex] + 1
            queue.append(child)

    root = radius
    parent = {root: None}
    depth = {root: 0}
    walk = deque([root])
    while walk:
        vertex = walk.popleft()
        for neighbour in adjacency[vertex]:
            if neighbour not in depth:
                parent[neighbour] = vertex
                depth[neighbour] = depth[vertex] + 1
                walk.append(neighbour)

    size = next_id
    logger.debug('Built tree q=%d radius=%d with %d vertices', q, radius, size)
    return TreeBuilding(
        q=q,
        radius=radius,
        adjacency=tuple(tuple(sorted(adjacency[v])) for v in range(size)),
        parent=tuple(parent[v] for v in range(size)),
        depth=tuple(depth[v] for v in range(size)),
        edge_distance=tuple(edge_distance[v] for v in range(size)),
    )


def path(tree, x, y):
    """The geodesic from ``x`` to ``y`` as a vertex list."""
    left, right = [x], [y]
    while left[-1] != right[-1]:
        if tree.depth[left[-1]] >= tree.depth[right[-1]]:
            left.append(tree.parent[left[-1]])
        else:
            right.append(tree.parent[right[-1]])
    return left + right[-2::-1]


def distance(tree, x, y):
    return len(path(tree, x, y)) - 1


def projection(tree, x):
    """(index b, distance t) of the nearest apartment vertex a_b."""
    steps = 0
    while tree.apartment_index(x) is None:
        x = tree.parent[x]
        steps += 1
    return tree.apartment_index(x), steps


def busemann_level(tree, end, x):
    """Horospherical level of ``x`` relative to ``end``, normalized along A."""
    b, t = projection(tree, x)
    return b - t if end == End.PLUS else b + t


def _simplex(x):
    return (x,) if isinstance(x, int) else tuple(x)


def is_apartment(tree, apartment):
    vertices = apartment.vertices
    if len(vertices) < 2:
        return False
    if not (tree.is_leaf(vertices[0]) and tree.is_leaf(vertices[-1])):
        return False
    for u, v in zip(vertices, vertices[1:]):
        if v not in tree.adjacency[u]:
            return False
    return all(vertices[i] != vertices[i + 2] for i in range(len(vertices) - 2))


def _extensions(tree, walk):
    """Every way to prolong ``walk`` past its last vertex until a leaf."""
    last = walk[-1]
    previous = walk[-2] if len(walk) > 1 else None
    options = [v for v in tree.adjacency[last] if v != previous]
    if not options:
        yield walk
        return
    for option in options:
        yield from _extensions(tree, walk + [option])


def _extend(tree, walk):
    while True:
        previous = walk[-2] if len(walk) > 1 else None
        options = [v for v in tree.adjacency[walk[-1]] if v != previous]
        if not options:
            return walk
        walk = walk + [min(options)]


def _core(tree, simplex, anchor):
    if isinstance(anchor, str):
        end_vertex = tree.end_vertex(anchor)
        start = max(simplex, key=lambda v: (distance(tree, v, end_vertex), -v))
        return path(tree, start, end_vertex), True
    points = sorted(set(simplex) | set(anchor))
    if len(points) == 1:
        return points, False
    a, b = max(combinations(points, 2), key=lambda pair: distance(tree, *pair))
    return path(tree, a, b), False


def apartment_through(tree, x, anchor):
    """
    An apartment containing the vertex or edge ``x`` and the anchor, which
    is an edge of A or an end of A.
    """
    simplex = _simplex(x)
    core, fixed_end = _core(tree, simplex, anchor)
    walk = _extend(tree, core[::-1])[::-1]
    if not fixed_end:
        walk = _extend(tree, walk)
    return TreeApartment(tuple(walk))


def apartments_through(tree, x, anchor):
    """All apartments containing ``x`` and the anchor."""
    simplex = _simplex(x)
    core, fixed_end = _core(tree, simplex, anchor)
    found = []
    for back in _extensions(tree, core[::-1]):
        walk = back[::-1]
        if fixed_end:
            found.append(TreeApartment(tuple(walk)))
        else:
            found.extend(TreeApartment(tuple(w)) for w in _extensions(tree, walk))
    return found


def _apartment_vertex(tree, index):
    if not -tree.radius <= index <= tree.radius + 1:
        raise MarginExceeded(f'The image a_{index} lies outside the truncation.')
    return tree.a(index)


def retract_at_alcove(tree, c, x, witness=None):
    """
    Image of vertex ``x`` under the retraction onto A centred at the edge
    ``c`` of A, computed through the apartment isomorphism of a witness.
    """
    u, w = c
    witness = witness or apartment_through(tree, x, c)
    pu, pw, px = witness.position(u), witness.position(w), witness.position(x)
    iu, iw = tree.apartment_index(u), tree.apartment_index(w)
    step = (iw - iu) * (pw - pu)
    return _apartment_vertex(tree, iu + step * (px - pu))


def alcove_profile_image(tree, c, x):
    """Closed form: go from the endpoint of ``c`` nearest to ``x`` away from ``c``."""
    u, w = c
    du, dw = distance(tree, x, u), distance(tree, x, w)
    near, far, d = (u, w, du) if du <= dw else (w, u, dw)
    i_near, i_far = tree.apartment_index(near), tree.apartment_index(far)
    return _apartment_vertex(tree, i_near + d * (i_near - i_far))


def check_margin(tree, x):
    margin = settings.GALLERY_FOLDING['TREE_END_MARGIN']
    if tree.edge_distance[x] > tree.radius - margin:
        raise MarginExceeded(
            f'Vertex {x} is {tree.edge_distance[x]} away from the base edge; '
            f'the limit is {tree.radius - margin}.'
        )


def within_margin(tree):
    margin = settings.GALLERY_FOLDING['TREE_END_MARGIN']
    return [v for v in range(tree.size) if tree.edge_distance[v] <= tree.radius - margin]


def retract_from_end(tree, end, x, witness=None):
    """Image of ``x`` under the retraction from the end ``end`` of A."""
    check_margin(tree, x)
    witness = witness or apartment_through(tree, x, end)
    steps = len(witness.vertices) - 1 - witness.position(x)
    if end == End.PLUS:
        return _apartment_vertex(tree, tree.radius + 1 - steps)
    return _apartment_vertex(tree, -tree.radius + steps)


def _edges_toward(tree, end):
    ahead = list(range(0, tree.radius + 1))
    behind = list(range(-1, -tree.radius - 1, -1))
    if end == End.MINUS:
        ahead, behind = [0] + behind, ahead[1:]
    return [(tree.a(i), tree.a(i + 1)) for i in ahead + behind]


def compat_witness(tree, end, d):
    """An edge c of A with r_{A,c}(d) equal to the end retraction of ``d``."""
    target = retract_from_end(tree, end, d)
    for c in _edges_toward(tree, end):
        try:
            if retract_at_alcove(tree, c, d) == target:
                return c
        except MarginExceeded:
            continue
    raise NoWitness(f'No edge of A retracts {d} like the end {end}.')


def _partition(vertices, key):
    """Groups keyed by image, and the vertices whose image leaves the truncation."""
    parts = defaultdict(list)
    dropped = []
    for v in vertices:
        try:
            parts[key(v)].append(v)
        except MarginExceeded:
            dropped.append(v)
    if dropped:
        logger.debug('%d vertices have no image inside the truncated apartment', len(dropped))
    return {image: tuple(sorted(members)) for image, members in sorted(parts.items())}, tuple(dropped)


def _fibers(tree, anchor):
    if isinstance(anchor, str):
        return _partition(within_margin(tree), lambda v: retract_from_end(tree, anchor, v))
    return _partition(range(tree.size), lambda v: retract_at_alcove(tree, anchor, v))


def fiber_partition(tree, anchor):
    """
    Vertices grouped by their image under the retraction given by ``anchor``.

    The domain is the whole ball for an edge of A and ``within_margin`` for
    an end. Vertices whose image falls outside the truncated apartment are
    not grouped; ``uncovered_vertices`` lists them.
    """
    return _fibers(tree, anchor)[0]


def uncovered_vertices(tree, anchor):
    """Vertices of the domain of ``fiber_partition`` that it leaves out."""
    return _fibers(tree, anchor)[1]


def profile_partition(tree, anchor):
    """The same grouping computed from closed forms only."""
    if isinstance(anchor, str):
        return _partition(
            within_margin(tree),
            lambda v: tree.a(busemann_level(tree, anchor, v)),
        )[0]
    return _partition(range(tree.size), lambda v: alcove_profile_image(tree, anchor, v))[0]
