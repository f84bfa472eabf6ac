import logging
from collections import deque
from fractions import Fraction

from django.conf import settings

from .exceptions import BudgetExceeded
from .models import Operator
from .services import try_operator

logger = logging.getLogger(__name__)


def lowering_operators(rs):
    return [(Operator.F, i) for i in range(1, rs.rank + 1)]


def crystal_operators(rs):
    return [(op, i) for i in range(1, rs.rank + 1) for op in (Operator.E, Operator.F)]


def orbit(rs, start, operators, budget=None):
    """
    Closure of ``start`` under ``operators`` (pairs of operator and simple
    root), in breadth-first order with each layer sorted.
    """
    if budget is None:
        budget = settings.GALLERY_FOLDING['ORBIT_BUDGET']
    seen = {start}
    members = [start]
    layer = [start]
    while layer:
        following = set()
        for gallery in layer:
            for operator, alpha in operators:
                image = try_operator(rs, gallery, alpha, operator)
                if image is None or image in seen:
                    continue
                seen.add(image)
                following.add(image)
                if len(seen) > budget:
                    raise BudgetExceeded(f'The orbit has more than {budget} galleries.')
        layer = sorted(following, key=lambda g: g.sort_key)
        members.extend(layer)
    logger.debug('Orbit of %s has %d members', start, len(members))
    return members


def weyl_dimension(rs, coweight):
    """prod over positive roots of (<lambda,beta> + ht beta) / ht beta."""
    result = Fraction(1)
    for root in rs.positive_roots:
        level = sum((c * x for c, x in zip(root, coweight)), Fraction(0))
        result *= (level + rs.height(root)) / rs.height(root)
    return int(result)


def highest_element(rs, gallery, limit=1000):
    """Apply raising operators until none is defined."""
    for _ in range(limit):
        for alpha in range(1, rs.rank + 1):
            image = try_operator(rs, gallery, alpha, Operator.E)
            if image is not None:
                gallery = image
                break
        else:
            return gallery
    raise BudgetExceeded(f'No highest element within {limit} raising steps.')


def lowest_element(rs, gallery, limit=1000):
    for _ in range(limit):
        for alpha in range(1, rs.rank + 1):
            image = try_operator(rs, gallery, alpha, Operator.F)
            if image is not None:
                gallery = image
                break
        else:
            return gallery
    raise BudgetExceeded(f'No lowest element within {limit} lowering steps.')
