from django.core.management.base import BaseCommand, CommandError

from root_geometry.exceptions import GeometryError
from root_geometry.services import CARTAN_MATRICES
from verification.suites import Suite, SuiteOptions, render_report, run_suite


class Command(BaseCommand):
    help = 'Run the acceptance suites and print a machine readable report'

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=Suite.CHOICES, default=Suite.ALL)
        parser.add_argument('--type', dest='type_label', choices=sorted(CARTAN_MATRICES), default='A2')
        parser.add_argument('--samples', type=int, help='Corpus size')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--max-length', type=int, help='Longest gallery in the corpus')
        parser.add_argument('--q', type=int, default=2, help='Tree thickness')
        parser.add_argument('--depth', type=int, default=8, help='Tree radius')
        parser.add_argument('--jobs', type=int, default=1)
        parser.add_argument(
            '--experiment',
            action='store_true',
            help='Also compare both sides of the theorems on non-regular galleries',
        )

    def handle(self, *args, **options):
        suite_options = SuiteOptions(
            type_label=options['type_label'],
            samples=options['samples'],
            seed=options['seed'],
            max_length=options['max_length'],
            q=options['q'],
            depth=options['depth'],
            jobs=max(options['jobs'], 1),
            experiment=options['experiment'],
        )
        try:
            report = run_suite(options['suite'], suite_options)
        except GeometryError as exc:
            raise CommandError(f'{options["suite"]} suite aborted: {exc}', returncode=1)

        self.stdout.write(render_report(report).decode('utf-8'))
        if not report['ok']:
            raise CommandError(f'{options["suite"]} suite failed', returncode=1)
