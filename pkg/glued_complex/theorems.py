"""
The operators e, f and e~ rebuilt from retractions, and the comparison
with their direct definitions.
"""
import logging

from django.db import models

from folding.models import Operator
from folding.services import OPERATORS, operator_indices, require_indices
from gallery.services import split, weakly_above, weakly_below
from root_geometry.exceptions import GeometryError

from .exceptions import RegularityViolated
from .models import ChartId, Direction, LabeledGallery
from .services import (
    BASE,
    iota,
    join_retracted,
    preimage,
    retract_gallery,
)

logger = logging.getLogger(__name__)


class Outcome(models.TextChoices):
    UNDEFINED = 'undefined', 'Operator undefined'
    MATCH = 'match', 'Regular, sides agree'
    MISMATCH = 'mismatch', 'Regular, sides differ'
    IRREGULAR_AGREE = 'irregular_agree', 'Not regular, sides agree'
    IRREGULAR_DISAGREE = 'irregular_disagree', 'Not regular, sides differ'
    IRREGULAR = 'irregular', 'Not regular'


def regularity_violation(gallery, indices, operator):
    """Index of the first alcove breaking the theorem's hypothesis, or ``None``."""
    root, m, j, k = indices.root, indices.m, indices.j, indices.k
    for i, alcove in enumerate(gallery.alcoves):
        if operator == Operator.E:
            bad = not weakly_above(alcove, root, m) or (i < j and not weakly_above(alcove, root, m + 1))
        elif operator == Operator.F:
            bad = not weakly_above(alcove, root, m) or (i >= k and not weakly_above(alcove, root, m + 1))
        else:
            bad = j <= i < k and not weakly_below(alcove, root, m)
        if bad:
            return i
    return None


def _check_regular(gallery, indices, operator, strict):
    if not strict:
        return
    index = regularity_violation(gallery, indices, operator)
    if index is not None:
        raise RegularityViolated(
            f'c_{index} = {gallery.alcoves[index]} breaks the hypothesis for {operator}.',
            index=index,
        )


def theorem_ef_rhs(rs, gallery, alpha, operator, strict=True):
    """
    e: split at p_k, lift the tail to Lower(alpha,m), move everything by
    iota from level m to m+1 and retract antidominantly.
    f: split at p_j and use iota from level m to m-1.
    """
    if operator not in (Operator.E, Operator.F):
        raise ValueError(f'theorem_ef_rhs handles e and f, not {operator}.')
    indices = require_indices(rs, gallery, alpha, operator)
    _check_regular(gallery, indices, operator, strict)
    root, m = indices.root, indices.m
    if operator == Operator.E:
        cut, target = indices.k, m + 1
    else:
        cut, target = indices.j, m - 1
    head, tail = split(gallery, cut)

    lifted = LabeledGallery.in_chart(tail, ChartId.lower(root, m))
    pieces = []
    for labeled in (LabeledGallery.in_chart(head, BASE), lifted):
        moved = labeled.map(lambda x: iota(rs, x, root, m, target, strict=strict))
        pieces.append(retract_gallery(rs, moved, Direction.ANTIDOMINANT))
    return join_retracted(*pieces)


def theorem_etilde_rhs(rs, gallery, alpha, strict=True):
    """
    The block between p_j and p_k is pulled back into Folded(alpha,m) and
    retracted antidominantly; the rest is kept.
    """
    indices = require_indices(rs, gallery, alpha, Operator.E_TILDE)
    _check_regular(gallery, indices, Operator.E_TILDE, strict)
    root, m = indices.root, indices.m
    head, rest = split(gallery, indices.j)
    block, tail = split(rest, indices.k - indices.j)
    moved = LabeledGallery(
        tuple(preimage(rs, p, root, m, Direction.DOMINANT) for p in block.panels),
        tuple(preimage(rs, c, root, m, Direction.DOMINANT) for c in block.alcoves),
    )
    middle = retract_gallery(rs, moved, Direction.ANTIDOMINANT)
    return join_retracted(head, middle, tail)


def theorem_rhs(rs, gallery, alpha, operator, strict=True):
    if operator == Operator.E_TILDE:
        return theorem_etilde_rhs(rs, gallery, alpha, strict=strict)
    return theorem_ef_rhs(rs, gallery, alpha, operator, strict=strict)


def evaluate_theorem(rs, gallery, alpha, operator, experiment=False):
    """
    Compare both sides of the theorem for ``operator`` on ``gallery``.

    Non-regular galleries are only evaluated in ``experiment`` mode.
    """
    indices = operator_indices(rs, gallery, alpha, operator)
    if indices is None:
        return Outcome.UNDEFINED
    direct = OPERATORS[operator](rs, gallery, alpha)
    regular = regularity_violation(gallery, indices, operator) is None
    if regular:
        try:
            rebuilt = theorem_rhs(rs, gallery, alpha, operator)
        except GeometryError as exc:
            logger.warning('Theorem evaluation failed on %s: %s', gallery, exc)
            return Outcome.MISMATCH
        return Outcome.MATCH if rebuilt == direct else Outcome.MISMATCH
    if not experiment:
        return Outcome.IRREGULAR
    try:
        rebuilt = theorem_rhs(rs, gallery, alpha, operator, strict=False)
    except GeometryError as exc:
        logger.debug('Experiment evaluation failed on %s: %s', gallery, exc)
        return Outcome.IRREGULAR_DISAGREE
    return Outcome.IRREGULAR_AGREE if rebuilt == direct else Outcome.IRREGULAR_DISAGREE
