import json
from fractions import Fraction

from django.test import SimpleTestCase
from sympy import Poly

from diffposet import utils
from diffposet.exceptions import RunConfigError
from diffposet.posets import RankVector
from diffposet.spectra import t


class DiffposetUtilsTest(SimpleTestCase):

    def test_format_str(self):
        self.assertEqual(utils.format_element_str(2, 1), '2:1')
        self.assertEqual(utils.format_element_str(2, 1, ''), '2:1')
        self.assertEqual(utils.format_element_str(2, 1, '(1,1)'), '2:1 "(1,1)"')

    def test_fraction_str(self):
        self.assertEqual(utils.fraction_str(Fraction(6, 3)), '2')
        self.assertEqual(utils.fraction_str(Fraction(-1, 8)), '-1/8')
        self.assertEqual(utils.fraction_str(7), '7')

    def test_lcm_of_denominators(self):
        self.assertEqual(utils.lcm_of_denominators([Fraction(1, 4), Fraction(5, 6), 2]), 12)
        self.assertEqual(utils.lcm_of_denominators([Fraction(4, 2)]), 1)
        self.assertEqual(utils.lcm_of_denominators([]), 1)

    def test_parse_int_range(self):
        self.assertEqual(utils.parse_int_range('5'), (5,))
        self.assertEqual(utils.parse_int_range('1..3'), (1, 2, 3))
        self.assertEqual(utils.parse_int_range('3,1,3'), (1, 3))
        self.assertEqual(utils.parse_int_range(' 1..2, 5 ', 1), (1, 2, 5))
        for text in ('a', '', ',', '3..1', '1..x'):
            with self.assertRaises(RunConfigError):
                utils.parse_int_range(text)
        with self.assertRaises(RunConfigError):
            utils.parse_int_range('0..2', 1)

    def test_json_encoder(self):
        def encode(value):
            return json.loads(json.dumps(value, cls=utils.RecordJSONEncoder))

        self.assertEqual(encode({'x': Fraction(1, 2)}), {'x': '1/2'})
        self.assertEqual(encode(Poly(t ** 2 + 1, t)), 't**2 + 1')
        self.assertEqual(encode({3, 1}), [1, 3])
        self.assertEqual(encode(RankVector(2, {1: Fraction(1, 2)})), {'rank': 2, 'coeffs': {'1': '1/2'}})
        with self.assertRaises(TypeError):
            encode(object())
