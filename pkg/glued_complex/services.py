"""
Chart arithmetic for the apartments glued along a wall H_{alpha,k}.

Every chart is a coordinatized copy of the standard apartment:

* ``Lower(alpha,k)`` agrees with Base on H-_{alpha,k} and branches off above;
* ``Folded(alpha,k)`` agrees with Base on H+_{alpha,k}; its lower half is the
  Lower branch, reached from Lower coordinates through s_{alpha,k}.
"""
import logging

from gallery.models import CombinatorialGallery
from gallery.services import concat, weakly_above, weakly_below
from root_geometry.services import affine_reflection

from .exceptions import ChartMismatch, OutsideDomain
from .models import ChartId, ChartKind, Direction, HalfSpace, LabeledFace

logger = logging.getLogger(__name__)

BASE = ChartId.base()


def _reflect(rs, face, root, level):
    return face.map(affine_reflection(rs, root, level))


def lift(rs, face, alpha, m):
    """The face with the same coordinates in Lower(alpha, m)."""
    return LabeledFace(ChartId.lower(alpha, m), face)


def retract(rs, x, direction):
    """
    Retraction onto Base from the antidominant or dominant chamber at
    infinity, restricted to the chart of ``x``.
    """
    chart, face = x.chart, x.face
    if chart.is_base:
        return face
    root, k = chart.root, chart.level
    if chart.kind == ChartKind.LOWER:
        if direction == Direction.ANTIDOMINANT or weakly_below(face, root, k):
            return face
        return _reflect(rs, face, root, k)
    if direction == Direction.DOMINANT or weakly_above(face, root, k):
        return face
    return _reflect(rs, face, root, k)


def preimage(rs, face, alpha, k, direction):
    """
    Inverse of the retraction restricted to one auxiliary apartment:
    Lower(alpha,k) for the antidominant one, Folded(alpha,k) for the
    dominant one.
    """
    if direction == Direction.ANTIDOMINANT:
        return lift(rs, face, alpha, k)
    if weakly_above(face, alpha, k):
        return LabeledFace(BASE, face)
    return LabeledFace(ChartId.folded(alpha, k), face)


def _same_wall(chart, other):
    return (chart.root, chart.level) == (other.root, other.level)


def transition(rs, x, target):
    """Rewrite ``x`` in the coordinates of chart ``target``."""
    chart, face = x.chart, x.face
    if chart == target:
        return x
    if chart.is_base or target.is_base:
        side = target if chart.is_base else chart
        root, k = side.root, side.level
        shared = weakly_below if side.kind == ChartKind.LOWER else weakly_above
        if not shared(face, root, k):
            raise OutsideDomain(f'{x} is not in {target}.')
        return LabeledFace(target, face)
    if not _same_wall(chart, target):
        raise ChartMismatch(f'{chart} and {target} are glued along different walls.')
    root, k = chart.root, chart.level
    # the Lower branch and the lower half of Folded are the same half-apartment
    branch = weakly_above if chart.kind == ChartKind.LOWER else weakly_below
    if not branch(face, root, k):
        raise OutsideDomain(f'{x} is not in {target}.')
    return LabeledFace(target, _reflect(rs, face, root, k))


def iota(rs, x, alpha, from_level, to_level, strict=True):
    """
    The isometry from the Folded apartment at ``from_level`` to the one at
    ``to_level`` fixing their overlap, written in {Base, Lower(alpha, to_level)}.

    ``strict=False`` skips the domain check.
    """
    chart, face = x.chart, x.face
    if not chart.is_base and (chart.root, chart.level) != (tuple(alpha), from_level):
        raise ChartMismatch(f'{x} does not live over the wall of level {from_level}.')
    if strict:
        below = not weakly_above(face, alpha, from_level)
        if below and (chart.is_base or chart.kind == ChartKind.LOWER):
            raise OutsideDomain(f'{x} lies strictly below the wall of level {from_level}.')
    image = retract(rs, x, Direction.DOMINANT)
    if weakly_above(image, alpha, to_level):
        return LabeledFace(BASE, image)
    return LabeledFace(ChartId.lower(alpha, to_level), _reflect(rs, image, alpha, to_level))


def retract_gallery(rs, labeled, direction):
    """Facewise retraction of a labeled gallery onto Base."""
    return CombinatorialGallery(
        tuple(retract(rs, p, direction) for p in labeled.panels),
        tuple(retract(rs, c, direction) for c in labeled.alcoves),
    )


def join_retracted(*galleries):
    """Concatenate retraction images, re-checking every junction."""
    return concat(*galleries)


def reflection_lemma_holds(rs, face, alpha, k):
    """Both retractions of the Lower(alpha,k) copy of ``face`` differ by s_{alpha,k}."""
    branch_face = lift(rs, face, alpha, k)
    dominant = retract(rs, branch_face, Direction.DOMINANT)
    antidominant = retract(rs, branch_face, Direction.ANTIDOMINANT)
    return dominant == _reflect(rs, antidominant, alpha, k)


def _inside(face, u):
    if u.fixed_half == HalfSpace.NEGATIVE:
        return weakly_below(face, u.root, u.level)
    return weakly_above(face, u.root, u.level)


def partner_chart(u):
    if u.fixed_half == HalfSpace.NEGATIVE:
        return ChartId.lower(u.root, u.level)
    return ChartId.folded(u.root, u.level)


def folding_automorphism_apply(rs, u, x):
    """
    Fix the half-apartment of ``u`` and swap the opposite half of Base with
    the branch of the partner chart.
    """
    partner = partner_chart(u)
    chart, face = x.chart, x.face
    if chart != BASE and chart != partner:
        raise ChartMismatch(f'{x} is not in Base or {partner}.')
    if _inside(face, u):
        return x
    return LabeledFace(partner if chart.is_base else BASE, face)


def induced_reflection(rs, u, face):
    """
    The map induced on Base by ``u`` followed by the element fixing the
    opposite half: the reflection at the wall of ``u``.
    """
    x = folding_automorphism_apply(rs, u, LabeledFace(BASE, face))
    if x.chart.is_base:
        x = folding_automorphism_apply(rs, u.opposite(), x)
    if x.chart.is_base:
        return x.face
    direction = Direction.DOMINANT if x.chart.kind == ChartKind.LOWER else Direction.ANTIDOMINANT
    return retract(rs, x, direction)
