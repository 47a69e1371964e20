"""diffposet constructions

Deterministic builders for the standard differential posets: Young's lattice (r = 1), the
Young-Fibonacci lattice (r = 1) and Cartesian products (r = sum of the factors' r).
"""

import dataclasses
import logging
from itertools import product
from typing import Iterator, List, Sequence, Tuple

from django.db.models import TextChoices

from .exceptions import PosetStructureError, RunConfigError
from .posets import GradedPoset

logger = logging.getLogger(__name__)


class Family(TextChoices):
    YOUNG = 'young', "Young's lattice"
    YOUNG_FIBONACCI = 'yf', 'Young-Fibonacci lattice'
    PRODUCT = 'product', 'Cartesian product'


FAMILY_ALIASES = {
    'young': Family.YOUNG,
    'y': Family.YOUNG,
    'yf': Family.YOUNG_FIBONACCI,
    'young_fibonacci': Family.YOUNG_FIBONACCI,
    'young-fibonacci': Family.YOUNG_FIBONACCI,
    'product': Family.PRODUCT,
}

# r of the families that have a fixed one
FAMILY_R = {Family.YOUNG: 1, Family.YOUNG_FIBONACCI: 1}


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    family: Family
    top_rank: int
    factors: Tuple['FamilySpec', ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        object.__setattr__(self, 'factors', tuple(self.factors))
        if self.top_rank < 1:
            raise RunConfigError(f'top rank must be at least 1, got {self.top_rank}')
        if self.family == Family.PRODUCT and len(self.factors) < 2:
            raise RunConfigError('a product needs at least two factors')
        if self.family != Family.PRODUCT and self.factors:
            raise RunConfigError(f'{self.family.label} takes no factors')

    @property
    def r(self) -> int:
        if self.family == Family.PRODUCT:
            return sum(factor.r for factor in self.factors)
        return FAMILY_R[self.family]

    def __str__(self):
        if self.family == Family.PRODUCT:
            return 'x'.join(str(factor.family.value) for factor in self.factors)
        return self.family.value


def family_from_name(name: str) -> Family:
    try:
        return FAMILY_ALIASES[name.strip().lower()]
    except KeyError:
        raise RunConfigError(f'unknown family "{name}" (choose from young, yf, product)') from None


def parse_factors(text: str, top_rank: int) -> Tuple[FamilySpec, ...]:
    """Parses 'young,yf' or 'young^3' into factor specs"""
    factors = []
    for part in text.split(','):
        part = part.strip()
        if not part:
            continue
        name, _, power = part.partition('^')
        try:
            count = int(power) if power else 1
        except ValueError:
            raise RunConfigError(f'invalid factor power in "{part}"') from None
        family = family_from_name(name)
        if family == Family.PRODUCT:
            raise RunConfigError('nested products are given as a flat factor list')
        factors += [FamilySpec(family, top_rank)] * count
    return tuple(factors)


def partitions(n: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n in lexicographically decreasing order of their parts"""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partition_str(partition: Sequence[int]) -> str:
    if not partition:
        return '∅'
    return '(' + ','.join(str(part) for part in partition) + ')'


def _young_additions(partition: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Partitions obtained by adding one box"""
    for row in range(len(partition) + 1):
        if row == len(partition):
            yield partition + (1,)
        elif row == 0 or partition[row - 1] > partition[row]:
            yield partition[:row] + (partition[row] + 1,) + partition[row + 1:]


def _assemble(ranks: List[list], cover, label) -> Tuple[Tuple[frozenset, ...], Tuple[Tuple[str, ...], ...]]:
    """Cover edges and labels from per-rank element lists and a function listing upper covers"""
    index = [{element: i for i, element in enumerate(rank)} for rank in ranks]
    edges = []
    for n in range(len(ranks) - 1):
        edges.append(frozenset((i, index[n + 1][above])
                               for i, element in enumerate(ranks[n]) for above in cover(element)))
    labels = tuple(tuple(label(element) for element in rank) for rank in ranks)
    return tuple(edges), labels


def build_young(top_rank: int) -> GradedPoset:
    """Young's lattice of partitions ordered by containment, ranks 0..top_rank"""
    if top_rank < 0:
        raise RunConfigError(f'top rank must be nonnegative, got {top_rank}')
    ranks = [list(partitions(n)) for n in range(top_rank + 1)]
    edges, labels = _assemble(ranks, _young_additions, partition_str)
    logger.debug(f'Built Young lattice through rank {top_rank}: {[len(rank) for rank in ranks]}')
    return GradedPoset(tuple(len(rank) for rank in ranks), edges, 1, labels)


def fibonacci_words(n: int) -> List[str]:
    """Words over {1, 2} with digit sum n, lexicographically ordered with 1 < 2"""
    if n == 0:
        return ['']
    if n == 1:
        return ['1']
    return ['1' + w for w in fibonacci_words(n - 1)] + ['2' + w for w in fibonacci_words(n - 2)]


def _young_fibonacci_lower(word: str) -> List[str]:
    """Elements covered by a word: 1v covers v; 2u covers every element covering u"""
    if word.startswith('1'):
        return [word[1:]]
    if word.startswith('2'):
        return _young_fibonacci_upper(word[1:])
    return []


def _young_fibonacci_upper(word: str) -> List[str]:
    """Elements covering a word: 1w, plus 2u for every u covered by w"""
    return ['1' + word] + ['2' + u for u in _young_fibonacci_lower(word)]


def build_young_fibonacci(top_rank: int) -> GradedPoset:
    if top_rank < 0:
        raise RunConfigError(f'top rank must be nonnegative, got {top_rank}')
    ranks = [fibonacci_words(n) for n in range(top_rank + 1)]
    edges, labels = _assemble(ranks, _young_fibonacci_upper, lambda word: word or 'ε')
    logger.debug(f'Built Young-Fibonacci lattice through rank {top_rank}: {[len(rank) for rank in ranks]}')
    return GradedPoset(tuple(len(rank) for rank in ranks), edges, 1, labels)


def compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of n into the given number of parts, first part largest first"""
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def build_product(factors: Sequence[GradedPoset], top_rank: int) -> GradedPoset:
    """Cartesian product of graded posets, ranks 0..top_rank

    Elements of rank n are tuples of (rank, index) pairs, one per factor, with ranks summing to n.
    """
    if len(factors) < 2:
        raise RunConfigError('a product needs at least two factors')
    for position, factor in enumerate(factors):
        if factor.top_rank < top_rank:
            raise PosetStructureError(f'factor {position} is stored through rank {factor.top_rank} only,'
                                 f' {top_rank} is needed')
    ranks = []
    for n in range(top_rank + 1):
        rank = []
        for shape in compositions(n, len(factors)):
            rank += product(*[[(m, i) for i in range(factor.rank_sizes[m])] for m, factor in zip(shape, factors)])
        ranks.append(rank)

    def cover(element):
        for position, (m, i) in enumerate(element):
            for j in factors[position].upper_covers(m, i):
                yield element[:position] + ((m + 1, j),) + element[position + 1:]

    def label(element):
        parts = [factors[p].label(m, i) or f'{m}:{i}' for p, (m, i) in enumerate(element)]
        return '(' + ', '.join(parts) + ')'

    edges, labels = _assemble(ranks, cover, label)
    r_values = [factor.r_param for factor in factors]
    r = sum(r_values) if None not in r_values else None
    logger.debug(f'Built product of {len(factors)} factors through rank {top_rank}')
    return GradedPoset(tuple(len(rank) for rank in ranks), tuple(edges), r, labels)


def build(spec: FamilySpec) -> GradedPoset:
    if spec.family == Family.YOUNG:
        return build_young(spec.top_rank)
    if spec.family == Family.YOUNG_FIBONACCI:
        return build_young_fibonacci(spec.top_rank)
    return build_product([build(factor) for factor in spec.factors], spec.top_rank)
