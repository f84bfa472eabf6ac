import json
import os
import tempfile
from fractions import Fraction
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APISimpleTestCase

from gallery.generators import minimal_dominant_gallery, random_corpus
from gallery.models import CombinatorialGallery, Face, GalleryDocument
from gallery.serializers import serialize_document
from root_geometry.services import build_root_system

from .exceptions import RankUnsupported
from .rendering import coroot_gram, render_gallery_svg
from .suites import CheckTally, Suite, SuiteOptions, run_suite

DOMINANT = b'{"root_system":"A1","galleries":[{"panels":[[["0"]],[["1"]],[["2"]]],"alcoves":[[["0"],["1"]],[["1"],["2"]]]}]}'
FOLDED = b'{"root_system":"A1","galleries":[{"panels":[[["0"]],[["-1"]],[["0"]]],"alcoves":[[["-1"],["0"]],[["-1"],["0"]]]}]}'
BROKEN = b'{"root_system":"A1","galleries":[{"panels":[[["0"]],[["2"]],[["2"]]],"alcoves":[[["0"],["1"]],[["1"],["2"]]]}]}'
OPEN_END = b'{"root_system":"A1","galleries":[{"panels":[[["0"]],[["0"],["1"]]],"alcoves":[[["0"],["1"]]]}]}'


def c2_minimal_document():
    rs = build_root_system('C2')
    return GalleryDocument('C2', (minimal_dominant_gallery(rs, (Fraction(0), Fraction(2))),))


def a2_folded_document():
    rs = build_root_system('A2')
    gallery = next(g for _, g in random_corpus(rs, 40, 7, 8) if g.folds)
    return GalleryDocument('A2', (gallery,))


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.directory = directory.name

    def write(self, name, content):
        path = os.path.join(self.directory, name)
        with open(path, 'wb') as handle:
            handle.write(content)
        return path

    def run_command(self, *args, **options):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err, **options)
        return out.getvalue()

    def command_error(self, *args, **options):
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command(*args, stdout=out, stderr=StringIO(), **options)
        return caught.exception, out.getvalue()


class ValidateCommandTests(CommandTestCase):

    def test_valid_document(self):
        report = json.loads(self.run_command('validate', self.write('ok.json', DOMINANT)))
        self.assertEqual(report, {'valid': True, 'galleries': [{'index': 0, 'valid': True, 'violations': []}]})

    def test_invalid_gallery_exits_one(self):
        """Test that the report names the broken panel"""
        error, output = self.command_error('validate', self.write('broken.json', BROKEN))
        self.assertEqual(error.returncode, 1)
        violations = json.loads(output)['galleries'][0]['violations']
        self.assertEqual([(v['kind'], v['index']) for v in violations], [('PanelNotFace', 1)])

    def test_parse_error_exits_two(self):
        error, _ = self.command_error('validate', self.write('zero.json', DOMINANT.replace(b'"2"]]]', b'"1/0"]]]')))
        self.assertEqual(error.returncode, 2)

    def test_missing_file_exits_two(self):
        error, _ = self.command_error('validate', os.path.join(self.directory, 'absent.json'))
        self.assertEqual(error.returncode, 2)


class ApplyCommandTests(CommandTestCase):

    def test_e_raises_the_folded_gallery(self):
        output = self.run_command('apply', self.write('folded.json', FOLDED), op='e', root=1)
        self.assertEqual(output, DOMINANT.decode() + '\n')

    def test_f_folds_the_dominant_gallery(self):
        output = self.run_command('apply', self.write('dominant.json', DOMINANT), op='f', root=1)
        self.assertEqual(output, FOLDED.decode() + '\n')

    def test_undefined_operator_exits_four(self):
        error, _ = self.command_error('apply', self.write('dominant.json', DOMINANT), op='e', root=1)
        self.assertEqual(error.returncode, 4)
        self.assertIn('case (I) requires m <= -1', str(error))

    def test_gallery_without_vertex_endpoint_exits_four(self):
        error, output = self.command_error('apply', self.write('open.json', OPEN_END), op='f', root=1)
        self.assertEqual(error.returncode, 4)
        self.assertIn('end in a vertex', str(error))
        self.assertEqual(output, '')

    def test_unknown_root_exits_two(self):
        error, _ = self.command_error('apply', self.write('dominant.json', DOMINANT), op='f', root=2)
        self.assertEqual(error.returncode, 2)

    def test_gallery_index_out_of_range(self):
        error, _ = self.command_error('apply', self.write('dominant.json', DOMINANT), op='f', root=1, index=3)
        self.assertEqual(error.returncode, 2)

    def test_strict_variant_exits_three(self):
        """Test that the printed f wall still prints its output and reports the defects"""
        error, output = self.command_error(
            'apply', self.write('dominant.json', DOMINANT), op='f', root=1, strict_paper=True,
        )
        self.assertEqual(error.returncode, 3)
        self.assertIn('PanelNotFace', str(error))
        self.assertTrue(output.startswith('{"root_system":"A1"'))


class RenderCommandTests(CommandTestCase):

    def test_render_is_deterministic(self):
        path = self.write('c2.json', serialize_document(c2_minimal_document()))
        first = self.run_command('render', path)
        second = self.run_command('render', path)
        self.assertEqual(first, second)
        self.assertTrue(first.startswith('<svg'))
        self.assertNotIn('-0.0000', first)

    def test_minimal_gallery_has_no_fold_marks(self):
        svg = self.run_command('render', self.write('c2.json', serialize_document(c2_minimal_document())))
        self.assertEqual(svg.count('<circle'), 1)

    def test_fold_marks(self):
        document = a2_folded_document()
        svg = self.run_command('render', self.write('a2.json', serialize_document(document)))
        self.assertEqual(svg.count('<circle'), len(document.galleries[0].folds) + 1)
        self.assertEqual(svg.count('<polygon'), document.galleries[0].length + 1)

    def test_render_to_file(self):
        out = os.path.join(self.directory, 'gallery.svg')
        printed = self.run_command('render', self.write('c2.json', serialize_document(c2_minimal_document())), out=out)
        self.assertEqual(printed, '')
        with open(out, encoding='utf-8') as handle:
            self.assertTrue(handle.read().startswith('<svg'))

    def test_rank_one_exits_five(self):
        error, _ = self.command_error('render', self.write('a1.json', DOMINANT))
        self.assertEqual(error.returncode, 5)


class RenderingTests(SimpleTestCase):

    def test_coroot_gram(self):
        self.assertEqual(coroot_gram(build_root_system('A2')), (2, -1, 2))
        g11, g12, g22 = coroot_gram(build_root_system('G2'))
        self.assertIn(g22 / g11, (3, Fraction(1, 3)))

    def test_rank_unsupported(self):
        rs = build_root_system('A3')
        with self.assertRaises(RankUnsupported):
            render_gallery_svg(rs, CombinatorialGallery.trivial(Face((rs.origin,))))


class VerifyCommandTests(CommandTestCase):

    def report(self, **options):
        return json.loads(self.run_command('verify', **options))

    def test_tree_suite(self):
        report = self.report(suite='tree', q=2, depth=3)
        self.assertTrue(report['ok'])
        self.assertEqual(report['suite'], 'tree')
        self.assertEqual(report['tree']['vertices'], 30)
        self.assertEqual(set(report['tree']['uncovered'].values()), {0})

    def test_paths_suite(self):
        report = self.report(suite='paths', samples=5, seed=3)
        self.assertTrue(report['ok'])
        self.assertEqual(report['checks']['endpoint_law']['rate'], '5/5')

    def test_operators_suite(self):
        report = self.report(suite='operators', type_label='A2', samples=10, max_length=6)
        self.assertTrue(report['ok'])

    def test_theorems_suite_with_threads(self):
        report = self.report(suite='theorems', type_label='A2', samples=10, max_length=6, jobs=2, experiment=True)
        self.assertTrue(report['ok'])
        self.assertIn('f', report['statistics'])


    def test_reports_are_reproducible(self):
        """Test that reruns and thread counts print the same bytes"""
        for suite, extra in (('operators', {}), ('theorems', {'experiment': True}), ('paths', {})):
            with self.subTest(suite=suite):
                runs = [
                    self.run_command('verify', suite=suite, samples=6, seed=3, max_length=6, jobs=jobs, **extra)
                    for jobs in (1, 1, 3)
                ]
                self.assertEqual(runs[1], runs[0])
                self.assertEqual(runs[2], runs[0])


class SuiteTests(SimpleTestCase):

    def test_tally_keeps_a_few_failures(self):
        tally = CheckTally()
        for serial in range(10):
            tally.record(serial % 2 == 0, serial=serial)
        self.assertEqual(tally.as_dict()['rate'], '5/10')
        self.assertEqual(len(tally.failures), 5)
        self.assertFalse(tally.ok)
        tally.asserted = False
        self.assertTrue(tally.ok)

    def test_defaults_come_from_settings(self):
        options = SuiteOptions()
        self.assertEqual((options.samples, options.seed, options.max_length), (1000, 7, 12))

    def test_all_suites(self):
        options = SuiteOptions(type_label='A1', samples=5, max_length=5, depth=2)
        report = run_suite(Suite.ALL, options)
        self.assertEqual([r['suite'] for r in report['suites']], ['operators', 'theorems', 'tree', 'paths'])
        self.assertTrue(report['ok'])


class GalleryApiTests(APISimpleTestCase):

    def post(self, name, body, **query):
        url = reverse(name)
        if query:
            url += '?' + '&'.join(f'{key}={value}' for key, value in query.items())
        return self.client.post(url, body, content_type='application/json')

    def test_validate(self):
        response = self.post('gallery-validate', DOMINANT)
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json(), {'valid': True, 'violations': []})

    def test_validate_reports_violations(self):
        response = self.post('gallery-validate', BROKEN)
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertFalse(response.json()['valid'])
        self.assertEqual(response.json()['violations'][0]['kind'], 'PanelNotFace')

    def test_malformed_document(self):
        response = self.post('gallery-validate', b'{"root_system": "A1"')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_apply(self):
        response = self.post('gallery-apply', FOLDED, op='e', root=1)
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json(), json.loads(DOMINANT))

    def test_apply_undefined(self):
        response = self.post('gallery-apply', DOMINANT, op='e', root=1)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.json()['code'], 'operator_undefined')

    def test_apply_strict_reports_violations(self):
        response = self.post('gallery-apply', DOMINANT, op='f', root=1, strict_paper='true')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual([v['index'] for v in response.json()['violations']], [0, 1])

    def test_apply_needs_an_operator(self):
        response = self.post('gallery-apply', DOMINANT, root=1)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_render(self):
        response = self.post('gallery-render', serialize_document(c2_minimal_document()))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response['Content-Type'], 'image/svg+xml')
        self.assertTrue(response.content.startswith(b'<svg'))

    def test_render_rank_one(self):
        response = self.post('gallery-render', DOMINANT)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.json()['code'], 'rank_unsupported')

    def test_render_index_out_of_range(self):
        response = self.post('gallery-render', serialize_document(c2_minimal_document()), index=4)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
