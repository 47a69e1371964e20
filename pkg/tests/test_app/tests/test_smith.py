import math
from fractions import Fraction

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings, strategies as st

from diffposet.chains import ChainPair, ChainPowers, attach_chain_pair, find_chain_pair
from diffposet.constructions import build_product, build_young, build_young_fibonacci
from diffposet.exceptions import PosetStructureError, SingularMatrixError
from diffposet.linalg import determinant, inverse
from diffposet.posets import SparseIntMatrix, du_matrix
from diffposet.smith import (check_divisibility_bound, first_column_check, last_entry_via_inverse,
                             random_invertible_matrices, random_matrix_oracle, smith_form)

K_VALUES = (1, 2, 3, 5, 11)

matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda size: st.lists(st.lists(st.integers(min_value=-9, max_value=9), min_size=size, max_size=size),
                          min_size=size, max_size=size))


class LinalgTest(SimpleTestCase):

    def test_determinant(self):
        self.assertEqual(determinant([[3, 1], [1, 3]]), 8)
        self.assertEqual(determinant([[0, 1], [1, 0]]), -1)
        self.assertEqual(determinant([[3, 1, 0], [1, 4, 1], [0, 1, 3]]), 30)
        self.assertEqual(determinant([[1, 2], [2, 4]]), 0)
        self.assertEqual(determinant([]), 1)

    def test_inverse(self):
        eighths = [[3, -1], [-1, 3]]
        self.assertEqual(inverse([[3, 1], [1, 3]]), [[Fraction(x, 8) for x in row] for row in eighths])
        self.assertEqual(inverse([[0, 2], [1, 0]]), [[0, 1], [Fraction(1, 2), 0]])
        self.assertEqual(inverse([]), [])
        with self.assertRaises(PosetStructureError):
            determinant([[1, 2]])
        with self.assertRaises(SingularMatrixError):
            inverse([[1, 2], [2, 4]])


class SmithFormTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(smith_form(SparseIntMatrix.identity(4)).diagonal, (1, 1, 1, 1))
        self.assertEqual(smith_form([[3, 1], [1, 3]]).diagonal, (1, 8))
        self.assertEqual(smith_form([[4, 1], [1, 4]]).diagonal, (1, 15))
        self.assertEqual(smith_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal, (2, 6, 12))
        self.assertEqual(smith_form([[1, 2, 3], [4, 5, 6]]).diagonal, (1, 3))
        self.assertEqual(smith_form([[0, 0], [0, 0]]).diagonal, (0, 0))

    def test_divisibility_repair(self):
        decomposition = smith_form([[6, 0], [0, 4]])
        self.assertEqual(decomposition.diagonal, (2, 12))
        self.assertEqual(decomposition.verify([[6, 0], [0, 4]]), [])
        self.assertEqual(smith_form([[-2, 0], [0, 3]]).diagonal, (1, 6))

    def test_du_matrices(self):
        young = build_young(6)
        for n in range(1, 6):
            for k in (1, 2, 3):
                matrix = du_matrix(young, n, k)
                decomposition = smith_form(matrix)
                self.assertEqual(decomposition.verify(matrix), [])
                self.assertEqual(decomposition.last_entry, last_entry_via_inverse(matrix))

    @settings(max_examples=60, deadline=None)
    @given(matrices)
    def test_random(self, rows):
        decomposition = smith_form(rows)
        self.assertEqual(decomposition.verify(rows), [])
        product = math.prod(decomposition.diagonal)
        self.assertEqual(product, abs(determinant(rows)))
        if product:
            self.assertEqual(decomposition.last_entry, last_entry_via_inverse(rows))


class InverseOracleTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(last_entry_via_inverse(SparseIntMatrix.identity(3)), 1)
        self.assertEqual(last_entry_via_inverse([[3, 1], [1, 3]]), 8)
        self.assertEqual(last_entry_via_inverse([[2, 0], [0, 6]]), 6)
        with self.assertRaises(SingularMatrixError):
            last_entry_via_inverse([[1, 1], [1, 1]])

    def test_random_oracle(self):
        report = random_matrix_oracle(0, 100, 5, 9)
        self.assertTrue(report.passed, report.mismatches)

    @override_settings(DIFFPOSET_SEED=3, DIFFPOSET_ORACLE_COUNT=5, DIFFPOSET_ORACLE_SIZE=3)
    def test_settings(self):
        report = random_matrix_oracle()
        self.assertEqual((report.seed, report.count, report.size, report.bound), (3, 5, 3, 9))
        self.assertTrue(report.passed)

    def test_seeded(self):
        self.assertEqual(random_invertible_matrices(7, 3, 4, 9), random_invertible_matrices(7, 3, 4, 9))
        self.assertTrue(all(determinant(m) for m in random_invertible_matrices(7, 10, 3, 2)))


class DivisibilityBoundTest(SimpleTestCase):

    def test_young(self):
        young = build_young(5)
        pair = find_chain_pair(young, 1)
        report = check_divisibility_bound(young, pair, 2, 1)
        self.assertEqual((report.last_entry, report.bound, report.divides), (8, 8, True))
        self.assertEqual(report.diagonal, [1, 8])
        report = check_divisibility_bound(young, pair, 3, 1)
        self.assertEqual((report.last_entry, report.bound, report.divides), (30, 30, True))
        self.assertIn('diagonal: 1 1 30', report.as_text())

    def test_product(self):
        poset = build_product([build_young(3), build_young(3)], 3)
        report = check_divisibility_bound(poset, find_chain_pair(poset, 2), 1, 1)
        self.assertEqual((report.last_entry, report.bound, report.multiplier), (15, 15, 15))
        self.assertTrue(report.exact)

    def test_families(self):
        for poset, top in ((build_young(11), 10), (build_young_fibonacci(11), 10),
                           (build_product([build_young(8), build_young(8)], 8), 7)):
            pair = find_chain_pair(poset, poset.r)
            powers = ChainPowers(poset, pair.t_chain)
            for n in range(1, top + 1):
                for k in K_VALUES:
                    report = check_divisibility_bound(poset, pair, n, k, powers=powers)
                    self.assertTrue(report.passed, report.as_text())
                    # the inverse gives the same last entry as the elimination
                    self.assertEqual(report.inverse_entry, report.last_entry)
                    self.assertEqual(report.multiplier, report.bound)


class FirstColumnTest(SimpleTestCase):

    def test_families(self):
        for poset, top in ((build_young(9), 8), (build_young_fibonacci(9), 8),
                           (build_product([build_young(7), build_young(7)], 7), 6)):
            attached, pair = attach_chain_pair(poset, find_chain_pair(poset, poset.r))
            for n in range(top + 1):
                for k in K_VALUES:
                    self.assertTrue(first_column_check(attached, pair, n, k).passed)

    def test_t_not_first(self):
        young = build_young(4)
        pair = find_chain_pair(young, 1)
        # s_2 = (1,1) is the second element of rank 2
        report = first_column_check(young, ChainPair(pair.s_chain, pair.t_chain), 2, 1)
        self.assertFalse(report.passed)
        self.assertEqual(report.column, [Fraction(3, 8), Fraction(-1, 8)])
