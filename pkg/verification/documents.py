import sys

from django.core.management.base import CommandError
from rest_framework.exceptions import ParseError

from gallery.serializers import parse_document

PARSE_ERROR = 2


def read_source(path):
    """Raw bytes of ``path``; ``-`` reads standard input."""
    if path == '-':
        return sys.stdin.buffer.read()
    try:
        with open(path, 'rb') as handle:
            return handle.read()
    except OSError as exc:
        raise CommandError(f'Cannot read {path}: {exc.strerror}', returncode=PARSE_ERROR)


def load_document(path):
    try:
        return parse_document(read_source(path))
    except ParseError as exc:
        raise CommandError(f'Parse error: {exc.detail}', returncode=PARSE_ERROR)


def select_gallery(document, index):
    if not 0 <= index < len(document.galleries):
        raise CommandError(
            f'The document has {len(document.galleries)} galleries; there is no gallery {index}.',
            returncode=PARSE_ERROR,
        )
    return document.galleries[index]
