"""diffposet graded posets

Truncated graded posets with a minimum element, the up and down maps between consecutive ranks as
exact integer matrices, and the certifier for the r-differential axioms.
"""

import dataclasses
import logging
from collections import Counter, defaultdict
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .exceptions import PosetStructureError, RankMismatchError, RankOutOfRange
from .reports import Report
from .utils import format_element_str, fraction_str, lcm_of_denominators

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SparseIntMatrix:
    """Sparse matrix of arbitrary-precision integers; zero entries are never stored"""
    n_rows: int
    n_cols: int
    entries: Mapping[Tuple[int, int], int] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise PosetStructureError(f'invalid matrix shape {self.n_rows}x{self.n_cols}')
        entries = {}
        for (i, j), value in self.entries.items():
            if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
                raise PosetStructureError(f'entry ({i}, {j}) outside {self.n_rows}x{self.n_cols} matrix')
            if value:
                entries[(i, j)] = int(value)
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def identity(cls, size: int, scale: int = 1) -> 'SparseIntMatrix':
        return cls(size, size, {(i, i): scale for i in range(size)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> 'SparseIntMatrix':
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise PosetStructureError('rows of different length')
        return cls(len(rows), n_cols, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def to_dense(self) -> List[List[int]]:
        rows = [[0] * self.n_cols for _ in range(self.n_rows)]
        for (i, j), value in self.entries.items():
            rows[i][j] = value
        return rows

    def transpose(self) -> 'SparseIntMatrix':
        return SparseIntMatrix(self.n_cols, self.n_rows, {(j, i): v for (i, j), v in self.entries.items()})

    def _check_shape(self, other: 'SparseIntMatrix'):
        if self.shape != other.shape:
            raise PosetStructureError(f'shape mismatch {self.shape} vs {other.shape}')

    def __add__(self, other: 'SparseIntMatrix') -> 'SparseIntMatrix':
        self._check_shape(other)
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, 0) + value
        return SparseIntMatrix(self.n_rows, self.n_cols, entries)

    def __neg__(self) -> 'SparseIntMatrix':
        return SparseIntMatrix(self.n_rows, self.n_cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: 'SparseIntMatrix') -> 'SparseIntMatrix':
        return self + (-other)

    def __matmul__(self, other: 'SparseIntMatrix') -> 'SparseIntMatrix':
        if self.n_cols != other.n_rows:
            raise PosetStructureError(f'cannot multiply {self.shape} by {other.shape}')
        rows_of_other = defaultdict(list)
        for (k, j), value in other.entries.items():
            rows_of_other[k].append((j, value))
        entries = defaultdict(int)
        for (i, k), a in self.entries.items():
            for j, b in rows_of_other[k]:
                entries[(i, j)] += a * b
        return SparseIntMatrix(self.n_rows, other.n_cols, entries)


@dataclasses.dataclass(frozen=True)
class RankVector:
    """Rational linear combination of the elements of one rank (an element of QP_n)"""
    rank: int
    coeffs: Mapping[int, Fraction] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        coeffs = {}
        for index, value in self.coeffs.items():
            if index < 0:
                raise PosetStructureError(f'negative element index {index}')
            if value:
                coeffs[int(index)] = Fraction(value)
        object.__setattr__(self, 'coeffs', dict(sorted(coeffs.items())))

    @classmethod
    def basis(cls, rank: int, index: int) -> 'RankVector':
        return cls(rank, {index: 1})

    def __getitem__(self, index: int) -> Fraction:
        return self.coeffs.get(index, Fraction(0))

    def __bool__(self):
        return bool(self.coeffs)

    def _check_rank(self, other: 'RankVector'):
        if self.rank != other.rank:
            raise RankMismatchError(f'cannot combine vectors of ranks {self.rank} and {other.rank}')

    def __add__(self, other: 'RankVector') -> 'RankVector':
        self._check_rank(other)
        coeffs = dict(self.coeffs)
        for index, value in other.coeffs.items():
            coeffs[index] = coeffs.get(index, 0) + value
        return RankVector(self.rank, coeffs)

    def __neg__(self) -> 'RankVector':
        return RankVector(self.rank, {i: -v for i, v in self.coeffs.items()})

    def __sub__(self, other: 'RankVector') -> 'RankVector':
        return self + (-other)

    def __mul__(self, scalar) -> 'RankVector':
        scalar = Fraction(scalar)
        return RankVector(self.rank, {i: v * scalar for i, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> 'RankVector':
        return self * (1 / Fraction(scalar))

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def common_denominator(self) -> int:
        return lcm_of_denominators(self.coeffs.values())

    def to_list(self, size: int) -> List[Fraction]:
        return [self[i] for i in range(size)]

    def __str__(self):
        if not self.coeffs:
            return '0'
        return ' + '.join(f'{fraction_str(v)}*[{self.rank}:{i}]' for i, v in self.coeffs.items())


@dataclasses.dataclass(frozen=True)
class GradedPoset:
    """Graded poset with a minimum element, stored through rank ``top_rank``

    ``cover_edges[n]`` holds the pairs (i, j) where element i of rank n is covered by element j of rank
    n + 1. ``reindexing`` records, per rank, the original index of every current index once the poset
    has been reindexed (see ``reindex``).
    """
    rank_sizes: Tuple[int, ...]
    cover_edges: Tuple[FrozenSet[Tuple[int, int]], ...]
    r_param: Optional[int] = None
    labels: Optional[Tuple[Tuple[str, ...], ...]] = None
    reindexing: Optional[Tuple[Tuple[int, ...], ...]] = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'rank_sizes', tuple(int(p) for p in self.rank_sizes))
        object.__setattr__(self, 'cover_edges', tuple(frozenset((int(i), int(j)) for i, j in level)
                                                      for level in self.cover_edges))
        if self.labels is not None:
            object.__setattr__(self, 'labels', tuple(tuple(str(x) for x in rank) for rank in self.labels))
        self._validate()

    def _validate(self):
        sizes = self.rank_sizes
        if not sizes:
            raise PosetStructureError('a graded poset needs at least rank 0')
        if sizes[0] != 1:
            raise PosetStructureError(f'rank 0 must hold exactly one (minimum) element, got {sizes[0]}')
        if any(p < 1 for p in sizes):
            raise PosetStructureError(f'rank sizes must be positive: {sizes}')
        if len(self.cover_edges) != len(sizes) - 1:
            raise PosetStructureError(f'expected {len(sizes) - 1} cover levels, got {len(self.cover_edges)}')
        for n, level in enumerate(self.cover_edges):
            for i, j in level:
                if not (0 <= i < sizes[n] and 0 <= j < sizes[n + 1]):
                    raise PosetStructureError(f'cover edge {n}:{i} -> {n + 1}:{j} out of range')
        if self.r_param is not None and self.r_param < 1:
            raise PosetStructureError(f'r must be a positive integer, got {self.r_param}')
        if self.labels is not None:
            if [len(rank) for rank in self.labels] != list(sizes):
                raise PosetStructureError('labels do not match rank sizes')

    @property
    def top_rank(self) -> int:
        return len(self.rank_sizes) - 1

    @property
    def size(self) -> int:
        return sum(self.rank_sizes)

    @property
    def r(self) -> int:
        """Declared differential parameter, falling back to the number of atoms"""
        return self.r_param if self.r_param is not None else infer_r(self)

    def check_rank(self, n: int, low: int = 0, high: int = None):
        high = self.top_rank if high is None else high
        if not (low <= n <= high):
            raise RankOutOfRange(n, low, high)

    @cached_property
    def _up_lists(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        result = []
        for n, level in enumerate(self.cover_edges):
            up = [[] for _ in range(self.rank_sizes[n])]
            for i, j in level:
                up[i].append(j)
            result.append(tuple(tuple(sorted(x)) for x in up))
        return tuple(result)

    @cached_property
    def _down_lists(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        result = [((),)]
        for n, level in enumerate(self.cover_edges):
            down = [[] for _ in range(self.rank_sizes[n + 1])]
            for i, j in level:
                down[j].append(i)
            result.append(tuple(tuple(sorted(x)) for x in down))
        return tuple(result)

    def upper_covers(self, n: int, i: int) -> Tuple[int, ...]:
        """Indices of the rank n+1 elements covering element i of rank n"""
        self.check_rank(n, 0, self.top_rank - 1)
        return self._up_lists[n][i]

    def lower_covers(self, n: int, i: int) -> Tuple[int, ...]:
        """Indices of the rank n-1 elements covered by element i of rank n"""
        self.check_rank(n)
        return self._down_lists[n][i]

    def label(self, n: int, i: int) -> Optional[str]:
        if self.labels is None:
            return None
        return self.labels[n][i]

    def element_str(self, n: int, i: int) -> str:
        return format_element_str(n, i, self.label(n, i))

    def original_index(self, n: int, i: int) -> int:
        if self.reindexing is None:
            return i
        return self.reindexing[n][i]

    def ungraded_elements(self) -> List[Tuple[int, int]]:
        """Elements of rank >= 1 that cover nothing (impossible in a graded poset)"""
        return [(n, i) for n in range(1, self.top_rank + 1)
                for i in range(self.rank_sizes[n]) if not self._down_lists[n][i]]

    def up(self, vector: RankVector) -> RankVector:
        """Applies U_n to a vector of rank n"""
        self.check_rank(vector.rank, 0, self.top_rank - 1)
        result = defaultdict(int)
        for i, value in vector.coeffs.items():
            for j in self._up_lists[vector.rank][i]:
                result[j] += value
        return RankVector(vector.rank + 1, result)

    def down(self, vector: RankVector) -> RankVector:
        """Applies D_n to a vector of rank n; D_0 is the zero map"""
        self.check_rank(vector.rank)
        if vector.rank == 0:
            return RankVector(0)
        result = defaultdict(int)
        for j, value in vector.coeffs.items():
            for i in self._down_lists[vector.rank][j]:
                result[i] += value
        return RankVector(vector.rank - 1, result)

    def up_power(self, vector: RankVector, j: int) -> RankVector:
        for _ in range(j):
            vector = self.up(vector)
        return vector

    def down_power(self, vector: RankVector, j: int) -> RankVector:
        for _ in range(j):
            vector = self.down(vector)
        return vector

    def reindex(self, orders: Sequence[Sequence[int]]) -> 'GradedPoset':
        """Returns the same poset with rank n listed in the order ``orders[n]`` (new index -> old index)"""
        if len(orders) != len(self.rank_sizes):
            raise PosetStructureError('one order per rank is required')
        orders = tuple(tuple(order) for order in orders)
        for n, order in enumerate(orders):
            if sorted(order) != list(range(self.rank_sizes[n])):
                raise PosetStructureError(f'order for rank {n} is not a permutation')
        inverse = [{old: new for new, old in enumerate(order)} for order in orders]
        edges = tuple(frozenset((inverse[n][i], inverse[n + 1][j]) for i, j in level)
                      for n, level in enumerate(self.cover_edges))
        labels = None
        if self.labels is not None:
            labels = tuple(tuple(self.labels[n][old] for old in order) for n, order in enumerate(orders))
        if self.reindexing is None:
            reindexing = orders
        else:
            reindexing = tuple(tuple(self.reindexing[n][old] for old in order) for n, order in enumerate(orders))
        return GradedPoset(self.rank_sizes, edges, self.r_param, labels, reindexing)

    def without_edge(self, n: int, i: int, j: int) -> 'GradedPoset':
        """Copy of the poset with one cover edge removed (used for negative controls)"""
        self.check_rank(n, 0, self.top_rank - 1)
        if (i, j) not in self.cover_edges[n]:
            raise PosetStructureError(f'no cover edge {n}:{i} -> {n + 1}:{j}')
        edges = list(self.cover_edges)
        edges[n] = edges[n] - {(i, j)}
        return dataclasses.replace(self, cover_edges=tuple(edges))


def up_matrix(poset: GradedPoset, n: int) -> SparseIntMatrix:
    """The p_{n+1} x p_n matrix of U_n; U is not exposed at the top stored rank"""
    poset.check_rank(n, 0, poset.top_rank - 1)
    return SparseIntMatrix(poset.rank_sizes[n + 1], poset.rank_sizes[n],
                           {(j, i): 1 for i, j in poset.cover_edges[n]})


def down_matrix(poset: GradedPoset, n: int) -> SparseIntMatrix:
    """The p_{n-1} x p_n matrix of D_n, the transpose of U_{n-1}"""
    poset.check_rank(n, 1, poset.top_rank)
    return up_matrix(poset, n - 1).transpose()


def du_matrix(poset: GradedPoset, n: int, shift: int = 0) -> SparseIntMatrix:
    """DU_n + shift * I"""
    poset.check_rank(n, 0, poset.top_rank - 1)
    result = down_matrix(poset, n + 1) @ up_matrix(poset, n)
    if shift:
        result = result + SparseIntMatrix.identity(poset.rank_sizes[n], shift)
    return result


def ud_matrix(poset: GradedPoset, n: int) -> SparseIntMatrix:
    poset.check_rank(n, 1, poset.top_rank)
    return up_matrix(poset, n - 1) @ down_matrix(poset, n)


def infer_r(poset: GradedPoset) -> int:
    """Number of atoms: the only r for which the poset can be r-differential"""
    if poset.top_rank < 1:
        raise RankOutOfRange(poset.top_rank, 1, what='top rank')
    return poset.rank_sizes[1]


def resolve_r(poset: GradedPoset, r: int = None) -> int:
    if r is not None:
        if r < 1:
            raise PosetStructureError(f'r must be a positive integer, got {r}')
        return r
    return poset.r


def pairing(a: RankVector, b: RankVector) -> Fraction:
    """Bilinear form in which the elements of a rank are orthonormal"""
    if a.rank != b.rank:
        raise RankMismatchError(f'cannot pair vectors of ranks {a.rank} and {b.rank}')
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    return sum((value * b[index] for index, value in a.coeffs.items()), Fraction(0))


@dataclasses.dataclass
class RankAxiomResult:
    rank: int
    matrix_equal: bool
    d1_violations: List[str] = dataclasses.field(default_factory=list)
    d2_violations: List[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.matrix_equal and not self.d1_violations and not self.d2_violations


@dataclasses.dataclass
class AxiomReport(Report):
    kind = 'axioms'
    r: int
    top_rank: int
    ranks: List[RankAxiomResult]
    ungraded: List[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.ungraded and all(result.passed for result in self.ranks)

    @property
    def highest_verified(self) -> Optional[int]:
        """Largest n such that every checked rank up to n passes"""
        highest = None
        for result in self.ranks:
            if not result.passed:
                break
            highest = result.rank
        return highest

    @property
    def failed_ranks(self) -> List[int]:
        return [result.rank for result in self.ranks if not result.passed]

    def record_extras(self) -> dict:
        return {'highest_verified': self.highest_verified, 'unchecked_rank': self.top_rank,
                'failed_ranks': self.failed_ranks}

    def summary(self) -> str:
        text = f'r={self.r}, DU-UD=rI checked for ranks 0..{self.top_rank - 1}'
        if self.passed:
            text += ', all pass'
        else:
            text += f', failing ranks {self.failed_ranks}'
        return text + f'; rank {self.top_rank} is the stored top and cannot be checked'

    def details(self) -> List[str]:
        lines = [f'ungraded element {x}' for x in self.ungraded]
        for result in self.ranks:
            lines += [f'rank {result.rank}: {v}' for v in result.d1_violations + result.d2_violations]
        return lines


def _pair_counts(lists: Sequence[Sequence[int]]) -> Counter:
    """Counts, for every pair a < b, how many of the given neighbour lists contain both"""
    counts = Counter()
    for neighbours in lists:
        counts.update(combinations(neighbours, 2))
    return counts


def _check_rank(poset: GradedPoset, n: int, r: int) -> RankAxiomResult:
    size = poset.rank_sizes[n]
    if n == 0:
        difference = du_matrix(poset, 0)
    else:
        difference = du_matrix(poset, n) - ud_matrix(poset, n)
    result = RankAxiomResult(n, difference == SparseIntMatrix.identity(size, r))
    # (D1): an element covering m others is covered by m + r others
    for i in range(size):
        below = len(poset.lower_covers(n, i)) if n > 0 else 0
        above = len(poset.upper_covers(n, i))
        if above != below + r:
            result.d1_violations.append(f'{poset.element_str(n, i)} covers {below} and is covered by {above},'
                                        f' expected {below + r}')
    # (D2): two elements with m common lower covers have m common upper covers
    if n > 0:
        upper = _pair_counts(poset._down_lists[n + 1])
        lower = _pair_counts(poset._up_lists[n - 1])
        for a, b in sorted(set(upper) | set(lower)):
            if upper[(a, b)] != lower[(a, b)]:
                result.d2_violations.append(f'{poset.element_str(n, a)} and {poset.element_str(n, b)} have'
                                            f' {lower[(a, b)]} common lower covers and {upper[(a, b)]}'
                                            f' common upper covers')
    return result


def check_axioms(poset: GradedPoset, r: int) -> AxiomReport:
    """Certifies DU_n - UD_n = rI for every rank that has a rank above it

    The bottom rank is included (DU_0 = rI, i.e. r atoms). Rank ``top_rank`` itself is never checked
    because the covers above it are not stored.
    """
    if poset.top_rank < 1:
        raise RankOutOfRange(poset.top_rank, 1, what='top rank')
    report = AxiomReport(r, poset.top_rank, [],
                         [poset.element_str(n, i) for n, i in poset.ungraded_elements()])
    for n in range(poset.top_rank):
        result = _check_rank(poset, n, r)
        report.ranks.append(result)
        if result.passed:
            logger.debug(f'Axioms: rank {n} passes (r={r})')
        else:
            logger.warning(f'Axioms: rank {n} fails (r={r}): '
                           f'{len(result.d1_violations)} D1 and {len(result.d2_violations)} D2 violations')
    logger.info(f'Axioms: r={r} top rank {poset.top_rank} highest verified {report.highest_verified}')
    return report
