from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from gallery.services import validate
from verification.documents import load_document


class Command(BaseCommand):
    help = 'Check every gallery of a document; exit 1 if any is invalid'

    def add_arguments(self, parser):
        parser.add_argument('file', help='Gallery document, or - for standard input')

    def handle(self, *args, **options):
        document = load_document(options['file'])
        rs = document.root_system
        reports = []
        for index, gallery in enumerate(document.galleries):
            violations = validate(rs, gallery)
            reports.append({
                'index': index,
                'valid': not violations,
                'violations': [v.as_dict() for v in violations],
            })
        valid = all(report['valid'] for report in reports)
        payload = {'valid': valid, 'galleries': reports}
        self.stdout.write(JSONRenderer().render(payload).decode('utf-8'))
        if not valid:
            broken = [str(report['index']) for report in reports if not report['valid']]
            raise CommandError(f'Invalid galleries: {", ".join(broken)}', returncode=1)
