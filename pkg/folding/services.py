"""
The root operators e, f and e~ on galleries starting at the origin.

Each operator is a piecewise isometry: alcove c_i is moved by the map of
the block it belongs to, and panels follow the map of a neighbouring alcove.
"""
import logging

from gallery.models import CombinatorialGallery, Face, Violation, ViolationKind
from gallery.services import (
    apply_map,
    concat,
    split,
    validate,
    weakly_above,
    weakly_below,
    weight,
)
from root_geometry.models import AffineIsometry
from root_geometry.services import affine_reflection, coroot_translation, pairing

from .exceptions import InconsistentBlocks, NotOriginBased, NotSimpleRoot, OperatorUndefined
from .models import CASE_OF, Operator, OperatorIndices, OperatorResult

logger = logging.getLogger(__name__)


def simple_root(rs, alpha):
    """Accepts a 1-based simple root index or a coefficient tuple."""
    if isinstance(alpha, int):
        if not 1 <= alpha <= rs.rank:
            raise NotSimpleRoot(f'{rs.type_label} has no simple root alpha_{alpha}.')
        return rs.simple_root(alpha)
    alpha = tuple(alpha)
    if not rs.is_simple(alpha):
        raise NotSimpleRoot(f'{alpha} is not a simple root of {rs.type_label}.')
    return alpha


def panel_levels(gallery, root):
    return gallery.panel_levels(root)


def _separated_from_dominant(alcove, root, m):
    return m <= 0 and weakly_below(alcove, root, m)


def _scan(rs, gallery, root, operator):
    """(indices, None) when defined, else (None, reason)."""
    levels = panel_levels(gallery, root)
    m = min(level for level in levels if level is not None)
    case = CASE_OF[operator]

    if operator == Operator.E:
        if m > -1:
            return None, f'case (I) requires m <= -1 (m = {m})'
        k = min(q for q, level in enumerate(levels) if level == m)
        candidates = [q for q in range(k + 1) if levels[q] == m + 1]
        if not candidates:
            return None, f'case (I) requires a panel on the wall of level {m + 1} before p_{k}'
        return OperatorIndices(case, root, m, max(candidates), k), None

    if operator == Operator.F:
        if gallery.end.dimension != 0:
            return None, f'case (II) requires the gallery to end in a vertex (it ends in {gallery.end})'
        end_level = pairing(rs, weight(gallery), root)
        if m > end_level - 1:
            return None, f'case (II) requires m <= <nu,alpha> - 1 (m = {m}, <nu,alpha> = {end_level})'
        j = max(q for q, level in enumerate(levels) if level == m)
        candidates = [q for q in range(j, len(levels)) if levels[q] == m + 1]
        if not candidates:
            return None, f'case (II) requires a panel on the wall of level {m + 1} after p_{j}'
        return OperatorIndices(case, root, m, j, min(candidates)), None

    if not any(weakly_below(alcove, root, m) for alcove in gallery.alcoves):
        return None, f'case (III) requires the gallery to cross the wall of level {m}'
    j = None
    for q, level in enumerate(levels):
        if level != m:
            continue
        if all(_separated_from_dominant(gallery.alcoves[i], root, m) for i in range(q)):
            j = q
            break
    if j is None:
        return None, f'case (III) requires a panel on the wall of level {m} behind the wall'
    later = [q for q in range(j + 1, len(levels)) if levels[q] == m]
    if not later:
        return None, f'case (III) requires a second panel on the wall of level {m}'
    return OperatorIndices(case, root, m, j, max(later)), None


def _check_domain(rs, gallery):
    if gallery.start != Face((rs.origin,)):
        raise NotOriginBased(f'The gallery starts at {gallery.start}, not at the origin.')


def operator_indices(rs, gallery, alpha, operator):
    """The indices (m, j, k) of ``operator`` on ``gallery``, or ``None`` if undefined."""
    root = simple_root(rs, alpha)
    _check_domain(rs, gallery)
    indices, _ = _scan(rs, gallery, root, operator)
    return indices


def require_indices(rs, gallery, alpha, operator):
    root = simple_root(rs, alpha)
    _check_domain(rs, gallery)
    indices, reason = _scan(rs, gallery, root, operator)
    if indices is None:
        raise OperatorUndefined(reason)
    return indices


def block_maps(rs, gallery, indices, strict_paper=False):
    """
    One isometry per alcove, and the alcove left unassigned by the printed
    e-clause (``None`` unless ``strict_paper``).
    """
    root, m, j, k = indices.root, indices.m, indices.j, indices.k
    identity = AffineIsometry.identity(rs.rank)
    unassigned = None
    if indices.case == CASE_OF[Operator.E]:
        block, tail = affine_reflection(rs, root, m + 1), coroot_translation(rs, root, 1)
        if strict_paper and j >= 1:
            unassigned = j - 1
    elif indices.case == CASE_OF[Operator.F]:
        block = affine_reflection(rs, root, m + 1 if strict_paper else m)
        tail = coroot_translation(rs, root, -1)
    else:
        block = affine_reflection(rs, root, m + 1 if strict_paper else m)
        tail = identity
    maps = []
    for i in range(gallery.length):
        if i < j:
            maps.append(identity)
        elif i < k:
            maps.append(block)
        else:
            maps.append(tail)
    return tuple(maps), unassigned


def block_strip_violations(gallery, indices):
    """
    Alcoves c_i with j <= i < k outside the closed strip between H_{alpha,m}
    and H_{alpha,m+1}.

    Cases (I) and (II) keep their whole block inside that strip. Case (III)
    puts no strip condition on its block, so the list is always empty there.
    """
    if indices.case == CASE_OF[Operator.E_TILDE]:
        return []
    root, m = indices.root, indices.m
    return [
        i for i in range(indices.j, indices.k)
        if not (weakly_above(gallery.alcoves[i], root, m) and weakly_below(gallery.alcoves[i], root, m + 1))
    ]


def apply_blocks(gallery, maps, checked=True):
    """Move every alcove by its own map; panels follow a neighbouring alcove."""
    panels, alcoves = gallery.panels, gallery.alcoves
    length = len(alcoves)
    if length == 0:
        return gallery
    if checked:
        if panels[0].map(maps[0]) != panels[0]:
            raise InconsistentBlocks(f'The first block moves the start {panels[0]}.')
        for i in range(1, length):
            if panels[i].map(maps[i - 1]) != panels[i].map(maps[i]):
                raise InconsistentBlocks(f'Blocks of c_{i - 1} and c_{i} disagree on p_{i} = {panels[i]}.')
    new_panels = [panels[0]]
    new_panels.extend(panels[i].map(maps[i]) for i in range(1, length))
    new_panels.append(panels[length].map(maps[length - 1]))
    new_alcoves = tuple(alcove.map(maps[i]) for i, alcove in enumerate(alcoves))
    return CombinatorialGallery(tuple(new_panels), new_alcoves)


def apply_operator(rs, gallery, alpha, operator, strict_paper=False):
    """
    Apply ``operator`` at ``alpha``.

    With ``strict_paper`` the printed reflection walls are used, the result
    is not asserted to be consistent, and its violations are returned.
    """
    indices = require_indices(rs, gallery, alpha, operator)
    maps, unassigned = block_maps(rs, gallery, indices, strict_paper=strict_paper)
    result = apply_blocks(gallery, maps, checked=not strict_paper)
    violations = []
    if strict_paper:
        if unassigned is not None:
            violations.append(Violation(
                ViolationKind.UNASSIGNED_ALCOVE, unassigned,
                f'c_{unassigned} is covered by no clause and is kept unchanged',
            ))
        violations.extend(validate(rs, result))
    logger.debug('%s_%s: case %s m=%d j=%d k=%d', operator, indices.root,
                 indices.case, indices.m, indices.j, indices.k)
    return OperatorResult(result, indices, tuple(violations))


def e_alpha(rs, gallery, alpha):
    return apply_operator(rs, gallery, alpha, Operator.E).gallery


def f_alpha(rs, gallery, alpha):
    return apply_operator(rs, gallery, alpha, Operator.F).gallery


def e_tilde_alpha(rs, gallery, alpha):
    return apply_operator(rs, gallery, alpha, Operator.E_TILDE).gallery


OPERATORS = {
    Operator.E: e_alpha,
    Operator.F: f_alpha,
    Operator.E_TILDE: e_tilde_alpha,
}


def try_operator(rs, gallery, alpha, operator):
    """The image under ``operator``, or ``None`` where it is undefined."""
    if operator_indices(rs, gallery, alpha, operator) is None:
        return None
    return OPERATORS[operator](rs, gallery, alpha)


def reflection_normal_form(rs, gallery, alpha, operator):
    """
    The operator written as reflections: the block between p_j and p_k is
    reflected once, the tail is moved by the product of both reflections.
    """
    indices = require_indices(rs, gallery, alpha, operator)
    root, m = indices.root, indices.m
    head, rest = split(gallery, indices.j)
    block, tail = split(rest, indices.k - indices.j)
    if operator == Operator.E:
        reflection = affine_reflection(rs, root, m + 1)
        tail_map = reflection.compose(affine_reflection(rs, root, m))
    elif operator == Operator.F:
        reflection = affine_reflection(rs, root, m)
        tail_map = reflection.compose(affine_reflection(rs, root, m + 1))
    else:
        reflection = affine_reflection(rs, root, m)
        tail_map = AffineIsometry.identity(rs.rank)
    return concat(head, apply_map(reflection, block), apply_map(tail_map, tail))


def _string_length(rs, gallery, alpha, operator, limit):
    steps = 0
    while steps < limit:
        image = try_operator(rs, gallery, alpha, operator)
        if image is None:
            break
        gallery, steps = image, steps + 1
    return steps


def epsilon(rs, gallery, alpha, limit=1000):
    """How often e_alpha can be applied in a row."""
    return _string_length(rs, gallery, alpha, Operator.E, limit)


def phi(rs, gallery, alpha, limit=1000):
    """How often f_alpha can be applied in a row."""
    return _string_length(rs, gallery, alpha, Operator.F, limit)
