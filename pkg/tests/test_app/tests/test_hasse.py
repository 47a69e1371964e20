import io
import os
import tempfile

from django.test import SimpleTestCase

from diffposet.constructions import build_product, build_young, build_young_fibonacci
from diffposet.exceptions import HasseParseError
from diffposet.hasse import HEADER, dump_hasse, format_hasse, load_hasse, parse_hasse, write_hasse

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


class ParseHasseTest(SimpleTestCase):

    def test_fixture(self):
        poset = load_hasse(os.path.join(FIXTURES, 'young3.hasse'))
        self.assertEqual(poset, build_young(3))
        self.assertEqual(poset.r_param, 1)
        self.assertEqual(poset.label(3, 1), '(2,1)')

    def test_minimal(self):
        text = 'rank_sizes: 1 1 2\nedge 0:0 1:0\nedge 1:0 2:0\nedge 1:0 2:1\n'
        poset = parse_hasse(text)
        self.assertEqual(poset.size, 4)
        self.assertIsNone(poset.r_param)
        self.assertIsNone(poset.labels)
        self.assertEqual(poset.upper_covers(1, 0), (0, 1))

    def test_comments_and_blank_lines(self):
        text = '# a comment\n\nrank_sizes: 1 1\n   # indented comment\nedge 0:0 1:0\n\n'
        self.assertEqual(parse_hasse(text).rank_sizes, (1, 1))

    def test_partial_labels(self):
        poset = parse_hasse('rank_sizes: 1 2\nedge 0:0 1:0\nedge 0:0 1:1\nlabel 1:1 second atom\n')
        self.assertEqual(poset.labels, (('',), ('', 'second atom')))
        self.assertEqual(poset.element_str(1, 0), '1:0')
        self.assertEqual(poset.element_str(1, 1), '1:1 "second atom"')

    def assertParseError(self, text, line_number, fragment):
        with self.assertRaises(HasseParseError) as cm:
            parse_hasse(text)
        self.assertEqual(cm.exception.line_number, line_number)
        self.assertIn(fragment, str(cm.exception))

    def test_errors(self):
        self.assertParseError('edge 0:0 1:0\n', 1, 'before the rank_sizes header')
        self.assertParseError('# nothing here\n', None, 'missing rank_sizes header')
        self.assertParseError('rank_sizes: 1 1\nrank_sizes: 1 1\n', 2, 'duplicate rank_sizes')
        self.assertParseError('rank_sizes: 1 1\nedge 0:0 1:0\nedge 0:0 1:0\n', 3, 'duplicate edge')
        self.assertParseError('rank_sizes: 1 1 1\nedge 0:0 2:0\n', 2, 'consecutive ranks')
        self.assertParseError('rank_sizes: 1 x\n', 1, 'not an integer')
        self.assertParseError('rank_sizes: 1 1\nedge 0:0\n', 2, 'exactly two elements')
        self.assertParseError('rank_sizes: 1 1\nedge 0-0 1:0\n', 2, '<rank>:<index>')
        self.assertParseError('rank_sizes: 1 1\nvertex 0:0\n', 2, 'unknown line')
        self.assertParseError('rank_sizes: 1 1\nlabel 1:0 a\nlabel 1:0 b\n', 3, 'duplicate label')
        self.assertParseError('rank_sizes: 1 1\nr: 1\nr: 2\n', 3, 'duplicate r')
        self.assertParseError('rank_sizes: 1 1\nedge 0:0 1:0\nr: 0\n', 3, 'r must be a positive integer')
        # Structural errors point at the header
        self.assertParseError('# header below\nrank_sizes: 2 1\n', 2, 'exactly one')

    def test_bytes(self):
        poset = parse_hasse(b'rank_sizes: 1 1\nedge 0:0 1:0\nlabel 1:0 \xe2\x88\x85\n')
        self.assertEqual(poset.label(1, 0), '\u2205')

    def test_invalid_utf8(self):
        with self.assertRaises(HasseParseError) as cm:
            load_hasse(os.path.join(FIXTURES, 'bad_utf8.hasse'))
        self.assertEqual(cm.exception.line_number, 3)
        self.assertIn('line 3: invalid UTF-8 at byte 10', str(cm.exception))

    def test_index_out_of_range(self):
        with self.assertRaises(HasseParseError) as cm:
            load_hasse(os.path.join(FIXTURES, 'bad_index.hasse'))
        self.assertEqual(cm.exception.line_number, 5)
        self.assertIn('line 5', str(cm.exception))
        self.assertIn('index 2 out of range', str(cm.exception))


class WriteHasseTest(SimpleTestCase):

    def test_round_trip(self):
        for poset in (build_young(6), build_young_fibonacci(6), build_product([build_young(3), build_young(3)], 3),
                      build_young(3).without_edge(2, 1, 2)):
            self.assertEqual(parse_hasse(format_hasse(poset)), poset)

    def test_format(self):
        text = format_hasse(build_young(2))
        self.assertEqual(text.splitlines()[:4], [HEADER, 'rank_sizes: 1 1 2', 'r: 1', 'edge 0:0 1:0'])
        self.assertIn('label 2:1 (1,1)', text)
        stream = io.StringIO()
        write_hasse(build_young(2), stream)
        self.assertEqual(stream.getvalue(), text)

    def test_files(self):
        poset = build_young_fibonacci(5)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'yf.hasse')
            dump_hasse(poset, path)
            self.assertEqual(load_hasse(path), poset)
