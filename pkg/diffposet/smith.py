"""diffposet Smith normal form

Exact Smith normal form over the integers with the unimodular transforms, the last Smith entry of an
invertible matrix read off its inverse, and the divisibility bound for the last Smith entry of
DU_n + kI.
"""

import dataclasses
import logging
import math
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from sympy import ZZ

from .chains import ChainPair, ChainPowers
from .conf import app_settings
from .exceptions import RunConfigError
from .fundamental import compute_v, minimal_integral_multiplier, multiplier_bound
from .linalg import Dense, dense, determinant, identity, inverse, matmul
from .posets import GradedPoset, SparseIntMatrix, du_matrix, resolve_r
from .reports import Report
from .utils import lcm_of_denominators

logger = logging.getLogger(__name__)

Matrix = Union[SparseIntMatrix, Sequence[Sequence[int]]]


@dataclasses.dataclass(frozen=True)
class SmithDecomposition:
    """P * A * Q = diag(d_1, ..., d_min(m, n)) with P, Q unimodular"""
    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]
    diagonal: Tuple[int, ...]

    @property
    def last_entry(self) -> Optional[int]:
        return self.diagonal[-1] if self.diagonal else None

    def diagonal_matrix(self) -> Dense:
        rows, cols = len(self.left), len(self.right)
        return [[self.diagonal[i] if i == j else 0 for j in range(cols)] for i in range(rows)]

    def verify(self, matrix: Matrix) -> List[str]:
        """Returns the list of violated properties (empty when the decomposition is valid)"""
        failures = []
        if matmul(matmul(self.left, dense(matrix)), self.right) != self.diagonal_matrix():
            failures.append('PAQ != D')
        if any(d < 0 for d in self.diagonal):
            failures.append('negative diagonal entry')
        for a, b in zip(self.diagonal, self.diagonal[1:]):
            if (b % a if a else b):
                failures.append(f'{a} does not divide {b}')
        if abs(determinant(self.left)) != 1:
            failures.append('P is not unimodular')
        if abs(determinant(self.right)) != 1:
            failures.append('Q is not unimodular')
        return failures


class _Elimination:
    """Row and column operations on A that are mirrored on P (rows) and Q (columns)"""

    def __init__(self, matrix: Matrix):
        self.a = dense(matrix)
        self.rows = len(self.a)
        self.cols = len(self.a[0]) if self.a else 0
        self.p = identity(self.rows)
        self.q = identity(self.cols)

    def swap_rows(self, i: int, j: int):
        if i != j:
            for m in (self.a, self.p):
                m[i], m[j] = m[j], m[i]

    def swap_cols(self, i: int, j: int):
        if i != j:
            for m in (self.a, self.q):
                for row in m:
                    row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, factor: int):
        """row_target += factor * row_source"""
        for m in (self.a, self.p):
            target_row, source_row = m[target], m[source]
            for j, value in enumerate(source_row):
                if value:
                    target_row[j] += factor * value

    def add_col(self, target: int, source: int, factor: int):
        """col_target += factor * col_source"""
        for m in (self.a, self.q):
            for row in m:
                if row[source]:
                    row[target] += factor * row[source]

    def negate_row(self, i: int):
        for m in (self.a, self.p):
            m[i] = [-x for x in m[i]]

    def combine_rows(self, i: int, j: int, x: int, y: int, u: int, v: int):
        """(row_i, row_j) <- (x row_i + y row_j, u row_i + v row_j); x v - y u must be 1"""
        for m in (self.a, self.p):
            row_i, row_j = m[i], m[j]
            m[i] = [x * a + y * b for a, b in zip(row_i, row_j)]
            m[j] = [u * a + v * b for a, b in zip(row_i, row_j)]

    def pivot_position(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.rows):
            row = self.a[i]
            for j in range(t, self.cols):
                if row[j] and (best is None or abs(row[j]) < abs(self.a[best[0]][best[1]])):
                    best = (i, j)
                    if abs(row[j]) == 1:
                        return best
        return best

    def diagonalize(self) -> int:
        """Brings A to diagonal form; returns the number of pivot steps"""
        steps = 0
        for t in range(min(self.rows, self.cols)):
            while True:
                position = self.pivot_position(t)
                if position is None:
                    return steps
                steps += 1
                self.swap_rows(t, position[0])
                self.swap_cols(t, position[1])
                pivot = self.a[t][t]
                clean = True
                for i in range(t + 1, self.rows):
                    if self.a[i][t]:
                        self.add_row(i, t, -(self.a[i][t] // pivot))
                        clean = clean and not self.a[i][t]
                for j in range(t + 1, self.cols):
                    if self.a[t][j]:
                        self.add_col(j, t, -(self.a[t][j] // pivot))
                        clean = clean and not self.a[t][j]
                if clean:
                    break
        return steps

    def fix_divisibility(self, size: int):
        """Replaces diagonal pairs (a, b) with a not dividing b by (gcd, lcm)"""
        for i in range(size):
            for j in range(i + 1, size):
                a, b = self.a[i][i], self.a[j][j]
                if not a or b % a == 0:
                    continue
                x, y, g = ZZ.gcdex(ZZ(a), ZZ(b))
                x, y, g = int(x), int(y), int(g)
                # [[a, 0], [0, b]] -> [[a, 0], [b, b]] -> [[g, y b], [0, a b / g]] -> [[g, 0], [0, a b / g]]
                self.add_col(i, j, 1)
                self.combine_rows(i, j, x, y, -(b // g), a // g)
                self.add_col(j, i, -(y * b // g))


def smith_form(matrix: Matrix) -> SmithDecomposition:
    """Smith normal form with the unimodular transforms

    The pivot is always the nonzero entry of least absolute value in the remaining block, so the result
    is deterministic. Entries may grow during elimination; Python integers keep everything exact.
    """
    elimination = _Elimination(matrix)
    steps = elimination.diagonalize()
    size = min(elimination.rows, elimination.cols)
    for i in range(size):
        if elimination.a[i][i] < 0:
            elimination.negate_row(i)
    elimination.fix_divisibility(size)
    logger.debug(f'Smith: {elimination.rows}x{elimination.cols} diagonalized in {steps} pivot steps')
    return SmithDecomposition(tuple(map(tuple, elimination.p)), tuple(map(tuple, elimination.q)),
                              tuple(elimination.a[i][i] for i in range(size)))


def last_entry_via_inverse(matrix: Matrix) -> int:
    """Least s > 0 with s * A^-1 integral, which is the last Smith entry of A"""
    return lcm_of_denominators(x for row in inverse(matrix) for x in row)


def _warn_if_large(poset: GradedPoset, n: int):
    if poset.rank_sizes[n] > app_settings.DENSE_LIMIT:
        logger.warning(f'Smith: rank {n} has {poset.rank_sizes[n]} elements, dense elimination will be slow')


@dataclasses.dataclass
class DivisibilityReport(Report):
    kind = 'smith'
    n: int
    k: int
    r: int
    diagonal: List[int]
    last_entry: int
    inverse_entry: int
    multiplier: int
    bound: int

    @property
    def divides(self) -> bool:
        return self.last_entry % self.bound == 0

    @property
    def exact(self) -> bool:
        return self.last_entry == self.bound

    @property
    def passed(self) -> bool:
        return self.divides and self.inverse_entry == self.last_entry and self.last_entry % self.multiplier == 0

    def record_extras(self) -> dict:
        return {'divides': self.divides, 'exact': self.exact}

    def summary(self) -> str:
        verdict = 'divides' if self.divides else 'does NOT divide'
        return f'n={self.n} k={self.k}: bound {self.bound} {verdict} last Smith entry {self.last_entry}'

    def details(self) -> List[str]:
        return [f'diagonal: {" ".join(str(d) for d in self.diagonal)}',
                f'inverse oracle: {self.inverse_entry}, first column multiplier: {self.multiplier},'
                f' bound exact: {self.exact}']


def check_divisibility_bound(poset: GradedPoset, pair: ChainPair, n: int, k: int, r: int = None,
                             powers: ChainPowers = None) -> DivisibilityReport:
    r = resolve_r(poset, r)
    bound = multiplier_bound(r, n, k)
    v = compute_v(poset, pair, n, k, r, powers)
    _warn_if_large(poset, n)
    matrix = du_matrix(poset, n, k)
    decomposition = smith_form(matrix)
    report = DivisibilityReport(n, k, r, list(decomposition.diagonal), decomposition.last_entry,
                                last_entry_via_inverse(matrix), minimal_integral_multiplier(v), bound)
    if report.passed:
        logger.info(f'Smith: n={n} k={k} last entry {report.last_entry}, bound {bound} divides it')
    else:
        logger.warning(f'Smith: n={n} k={k} last entry {report.last_entry}, bound {bound},'
                       f' inverse oracle {report.inverse_entry}, multiplier {report.multiplier}')
    return report


@dataclasses.dataclass
class FirstColumnReport(Report):
    kind = 'first-column'
    n: int
    k: int
    column: List[Fraction]
    v: List[Fraction]

    @property
    def passed(self) -> bool:
        return self.column == self.v

    def summary(self) -> str:
        return f'n={self.n} k={self.k}: first column of (DU+kI)^-1 {"equals" if self.passed else "differs from"} v'

    def details(self) -> List[str]:
        if self.passed:
            return []
        return [f'column: {[str(x) for x in self.column]}', f'v: {[str(x) for x in self.v]}']


def first_column_check(poset: GradedPoset, pair: ChainPair, n: int, k: int, r: int = None,
                       powers: ChainPowers = None) -> FirstColumnReport:
    """Compares column 0 of (DU_n + kI)^-1 with v_{n,k}

    The comparison is only meaningful when t_n is the first element of rank n, see
    ``chains.attach_chain_pair``.
    """
    v = compute_v(poset, pair, n, k, r, powers)
    _warn_if_large(poset, n)
    column = [row[0] for row in inverse(du_matrix(poset, n, k))]
    report = FirstColumnReport(n, k, column, v.value.to_list(poset.rank_sizes[n]))
    if not report.passed:
        logger.warning(f'Smith: first column of the inverse at n={n} k={k} differs from v')
    return report


@dataclasses.dataclass
class OracleReport(Report):
    kind = 'oracle'
    seed: int
    count: int
    size: int
    bound: int
    mismatches: List[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return (f'{self.count} random invertible {self.size}x{self.size} matrices (entries within'
                f' +-{self.bound}, seed {self.seed}): {len(self.mismatches)} mismatches')

    def details(self) -> List[str]:
        return self.mismatches


def random_invertible_matrices(seed: int, count: int, size: int, bound: int) -> List[Dense]:
    generator = random.Random(seed)
    matrices = []
    while len(matrices) < count:
        matrix = [[generator.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if determinant(matrix):
            matrices.append(matrix)
    return matrices


def random_matrix_oracle(seed: int = None, count: int = None, size: int = None, bound: int = None) -> OracleReport:
    """Last Smith entry versus the inverse oracle on seeded random invertible integer matrices"""
    seed = app_settings.SEED if seed is None else seed
    count = app_settings.ORACLE_COUNT if count is None else count
    size = app_settings.ORACLE_SIZE if size is None else size
    bound = app_settings.ORACLE_BOUND if bound is None else bound
    if size < 1 or bound < 1:
        raise RunConfigError(f'no invertible {size}x{size} matrices with entries within +-{bound}')
    report = OracleReport(seed, count, size, bound)
    for number, matrix in enumerate(random_invertible_matrices(seed, count, size, bound)):
        decomposition = smith_form(matrix)
        failures = decomposition.verify(matrix)
        oracle = last_entry_via_inverse(matrix)
        if decomposition.last_entry != oracle:
            failures.append(f'last entry {decomposition.last_entry} but inverse oracle {oracle}')
        product = math.prod(decomposition.diagonal)
        if product != abs(determinant(matrix)):
            failures.append(f'product of Smith entries {product} != |det|')
        report.mismatches += [f'matrix {number}: {failure}' for failure in failures]
    logger.info(f'Smith: random oracle on {count} matrices, {len(report.mismatches)} mismatches')
    return report
