from django.core.management.base import BaseCommand, CommandError

from verification.documents import load_document, select_gallery
from verification.exceptions import RankUnsupported
from verification.rendering import render_gallery_svg


class Command(BaseCommand):
    help = 'Draw one gallery of a rank-2 document as SVG'

    def add_arguments(self, parser):
        parser.add_argument('file', help='Gallery document, or - for standard input')
        parser.add_argument('--out', help='Output path; standard output if omitted')
        parser.add_argument('--index', type=int, default=0)

    def handle(self, *args, **options):
        document = load_document(options['file'])
        gallery = select_gallery(document, options['index'])
        try:
            svg = render_gallery_svg(document.root_system, gallery)
        except RankUnsupported as exc:
            raise CommandError(str(exc), returncode=5)

        if options['out']:
            with open(options['out'], 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(svg)
            self.stderr.write(self.style.SUCCESS(f'Wrote {options["out"]}'))
        else:
            self.stdout.write(svg, ending='')
