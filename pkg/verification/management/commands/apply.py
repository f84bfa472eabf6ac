import logging
from dataclasses import replace

from django.core.management.base import BaseCommand, CommandError

from folding.exceptions import NotOriginBased, NotSimpleRoot, OperatorUndefined
from folding.models import Operator
from folding.services import apply_operator
from gallery.serializers import serialize_document
from root_geometry.exceptions import GeometryError
from verification.documents import PARSE_ERROR, load_document, select_gallery

logger = logging.getLogger(__name__)

INVALID = 1
STRICT_VIOLATION = 3
UNDEFINED = 4


class Command(BaseCommand):
    help = 'Apply a root operator to one gallery and print the transformed document'

    def add_arguments(self, parser):
        parser.add_argument('file', help='Gallery document, or - for standard input')
        parser.add_argument('--op', choices=Operator.values, required=True)
        parser.add_argument('--root', type=int, required=True, help='Simple root index, starting at 1')
        parser.add_argument('--index', type=int, default=0, help='Gallery to transform')
        parser.add_argument(
            '--strict-paper',
            action='store_true',
            help='Use the printed reflection walls and report the resulting defects',
        )

    def handle(self, *args, **options):
        document = load_document(options['file'])
        index = options['index']
        gallery = select_gallery(document, index)
        try:
            result = apply_operator(
                document.root_system, gallery, options['root'], options['op'],
                strict_paper=options['strict_paper'],
            )
        except NotSimpleRoot as exc:
            raise CommandError(str(exc), returncode=PARSE_ERROR)
        except (OperatorUndefined, NotOriginBased) as exc:
            raise CommandError(f'{options["op"]}_{options["root"]} is undefined: {exc}', returncode=UNDEFINED)
        except GeometryError as exc:
            raise CommandError(f'Cannot apply {options["op"]}_{options["root"]}: {exc}', returncode=INVALID)

        galleries = list(document.galleries)
        galleries[index] = result.gallery
        output = replace(document, galleries=tuple(galleries))
        self.stdout.write(serialize_document(output).decode('utf-8'))
        if result.violations:
            for violation in result.violations:
                logger.info('Strict variant defect: %s', violation)
            raise CommandError(
                'The strict variant is not a gallery: ' + '; '.join(map(str, result.violations)),
                returncode=STRICT_VIOLATION,
            )
