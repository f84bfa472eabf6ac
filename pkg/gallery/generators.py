"""
Seeded corpora of folded galleries.

Every corpus item is reproducible from ``(seed, serial)`` alone.
"""
import itertools
import logging
import random

from root_geometry.linalg import mat_vec

from .exceptions import InvalidGalleryType
from .models import CombinatorialGallery, Face
from .services import (
    alcoves_containing,
    face_of_type,
    fold_is_positive,
    gallery_type,
    minimal_gallery,
    reflect_across,
)

logger = logging.getLogger(__name__)


def generate_random_folded(rs, type_of, seed, positive_only=True):
    """
    A gallery of type ``type_of`` from the origin, folding or crossing at
    each prescribed panel by a seeded coin.
    """
    rng = random.Random(seed)
    panel_labels = type_of.panel_labels
    if panel_labels[0] != (0,):
        raise InvalidGalleryType(f'The type {type_of} does not start at the origin.')
    if any(len(label) != rs.rank + 1 for label in type_of.alcove_labels):
        raise InvalidGalleryType(f'The type {type_of} is not a type of alcove galleries.')
    origin = Face((rs.origin,))
    if len(panel_labels) == 1:
        return CombinatorialGallery.trivial(origin)

    current = rng.choice(alcoves_containing(rs, origin))
    panels, alcoves = [origin], [current]
    for label in panel_labels[1:-1]:
        panel = face_of_type(rs, current, label)
        choices = ['cross']
        if not positive_only or fold_is_positive(rs, current, panel):
            choices.append('fold')
        if rng.choice(choices) == 'cross':
            current = reflect_across(rs, current, panel)
        panels.append(panel)
        alcoves.append(current)
    panels.append(face_of_type(rs, current, panel_labels[-1]))
    return CombinatorialGallery(tuple(panels), tuple(alcoves))


def minimal_length(rs, coweight):
    """Alcove count of a minimal gallery from the origin to a dominant ``coweight``."""
    total = 0
    for root in rs.positive_roots:
        level = sum(c * x for c, x in zip(root, coweight))
        total += max(level - 1, 0)
    return int(total) + 1


def dominant_coweights(rs, max_length):
    """Non-zero dominant coroot lattice points with minimal galleries of length <= max_length."""
    found = set()
    for coefficients in itertools.product(range(max_length + 1), repeat=rs.rank):
        if not any(coefficients):
            continue
        # level coordinates of sum n_j alpha_j^vee
        point = mat_vec(rs.cartan, coefficients)
        if any(c < 0 for c in point):
            continue
        if minimal_length(rs, point) <= max_length:
            found.add(point)
    return sorted(found, key=lambda p: (minimal_length(rs, p), p))


def minimal_dominant_gallery(rs, coweight):
    return minimal_gallery(rs, Face((rs.origin,)), Face((tuple(coweight),)))


def random_corpus(rs, samples, seed, max_length, positive_only=True):
    """
    ``samples`` pairs ``(serial, gallery)``; item ``s`` is drawn from
    ``random.Random(f'{seed}:{s}')``.
    """
    coweights = dominant_coweights(rs, max_length)
    types = {}
    corpus = []
    for serial in range(samples):
        rng = random.Random(f'{seed}:{serial}')
        coweight = rng.choice(coweights)
        if coweight not in types:
            types[coweight] = gallery_type(rs, minimal_dominant_gallery(rs, coweight))
        gallery = generate_random_folded(
            rs, types[coweight], rng.getrandbits(32), positive_only=positive_only,
        )
        corpus.append((serial, gallery))
    logger.info('Generated %d %s galleries (seed %s, length <= %d)',
                samples, rs.type_label, seed, max_length)
    return corpus
