"""diffposet chains

The distinguished pair of saturated chains (t_0, t_1, ...) and (s_0, s_1, ...) whose elements each
cover at most one element, and the greedy chain extension that produces them.
"""

import dataclasses
import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from django.db.models import TextChoices

from .exceptions import ChainExtensionError, PosetStructureError, RankOutOfRange
from .posets import GradedPoset, RankVector, pairing
from .reports import Report

logger = logging.getLogger(__name__)


class ChainProperty(TextChoices):
    RANKS = 'ranks', 'one element per rank'
    SATURATED = 'saturated', 'consecutive elements are covers'
    BRANCHING = 'branching', 'chains agree exactly below the branch rank'
    SINGLE_COVER = 'single-cover', 'every element covers at most one element'
    DESCENT = 'descent', 'D maps each chain element to its predecessor'


@dataclasses.dataclass(frozen=True)
class ChainPair:
    t_chain: Tuple[int, ...]
    s_chain: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 't_chain', tuple(self.t_chain))
        object.__setattr__(self, 's_chain', tuple(self.s_chain))
        if len(self.t_chain) != len(self.s_chain):
            raise PosetStructureError('both chains need one element per rank')

    @property
    def top_rank(self) -> int:
        return len(self.t_chain) - 1

    def t(self, n: int) -> RankVector:
        return RankVector.basis(n, self.t_chain[n])

    def s(self, n: int) -> RankVector:
        return RankVector.basis(n, self.s_chain[n])


class ChainPowers:
    """U^j t_m for one chain, computed incrementally and cached per (m, j)"""

    def __init__(self, poset: GradedPoset, chain: Sequence[int]):
        self.poset = poset
        self.chain = tuple(chain)
        self._cache: Dict[Tuple[int, int], RankVector] = {}

    def get(self, m: int, j: int) -> RankVector:
        key = (m, j)
        if key not in self._cache:
            if j == 0:
                self._cache[key] = RankVector.basis(m, self.chain[m])
            else:
                self._cache[key] = self.poset.up(self.get(m, j - 1))
        return self._cache[key]


def _covers_at_most_one(poset: GradedPoset, n: int, i: int) -> bool:
    return n == 0 or len(poset.lower_covers(n, i)) <= 1


def extend_chain(poset: GradedPoset, chain: Sequence[int], n: int, start_rank: int = 0) -> Tuple[int, ...]:
    """Extends a saturated chain up to rank n through elements that cover at most one element

    ``chain[0]`` has rank ``start_rank``. Among the admissible upper covers the one with the smallest
    index is taken; the last two given elements must already cover at most one element each.
    """
    chain = tuple(chain)
    if not chain:
        raise PosetStructureError('cannot extend an empty chain')
    current = start_rank + len(chain) - 1
    poset.check_rank(n, current, poset.top_rank)
    for offset, element in enumerate(chain[-2:]):
        rank = current - min(len(chain), 2) + 1 + offset
        if not _covers_at_most_one(poset, rank, element):
            raise ChainExtensionError(f'{poset.element_str(rank, element)} covers more than one element', rank)
    while current < n:
        candidates = [j for j in poset.upper_covers(current, chain[-1])
                      if _covers_at_most_one(poset, current + 1, j)]
        if not candidates:
            raise ChainExtensionError(f'no element covering {poset.element_str(current, chain[-1])} covers it alone;'
                                      f' the poset is not differential', current)
        chain += (candidates[0],)
        current += 1
        logger.debug(f'Chain: extended to {poset.element_str(current, candidates[0])}')
    return chain


def find_chain_pair(poset: GradedPoset, r: int) -> ChainPair:
    """The least pair of chains under canonical indexing, t taking the smaller branch"""
    top = poset.top_rank
    if top < 2:
        raise RankOutOfRange(top, 2, what='top rank')
    if poset.rank_sizes[1] != r:
        raise ChainExtensionError(f'{poset.rank_sizes[1]} elements cover the bottom but r={r}', 1)
    if r == 1:
        branches = [j for j in poset.upper_covers(1, 0) if _covers_at_most_one(poset, 2, j)]
        if len(branches) < 2:
            raise ChainExtensionError('fewer than two rank 2 elements cover the atom alone', 2)
        t_chain = extend_chain(poset, (0, 0, branches[0]), top)
        s_chain = extend_chain(poset, (0, 0, branches[1]), top)
    else:
        t_chain = extend_chain(poset, (0, 0), top)
        s_chain = extend_chain(poset, (0, 1), top)
    logger.info(f'Chains: found pair through rank {top} (r={r})')
    return ChainPair(t_chain, s_chain)


@dataclasses.dataclass
class ChainReport(Report):
    kind = 'chains'
    r: int
    t_chain: List[str]
    s_chain: List[str]
    violations: List[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_properties(self) -> List[str]:
        return sorted({violation.split(':', 1)[0] for violation in self.violations})

    def record_extras(self) -> dict:
        return {'failed_properties': self.failed_properties}

    def summary(self) -> str:
        text = f'r={self.r}, chains through rank {len(self.t_chain) - 1}'
        if self.violations:
            text += f', violated: {", ".join(self.failed_properties)}'
        return text

    def details(self) -> List[str]:
        return [f't: {" < ".join(self.t_chain)}', f's: {" < ".join(self.s_chain)}'] + self.violations


def _chain_violations(poset: GradedPoset, name: str, chain: Tuple[int, ...]) -> List[str]:
    violations = []
    for n, element in enumerate(chain):
        if n > poset.top_rank or not 0 <= element < poset.rank_sizes[n]:
            violations.append(f'{ChainProperty.RANKS.value}: {name}_{n} = {element} is not an element of rank {n}')
            return violations
    for n in range(1, len(chain)):
        if chain[n] not in poset.upper_covers(n - 1, chain[n - 1]):
            violations.append(f'{ChainProperty.SATURATED.value}: {poset.element_str(n, chain[n])} does not cover'
                              f' {poset.element_str(n - 1, chain[n - 1])}')
    for n, element in enumerate(chain):
        if not _covers_at_most_one(poset, n, element):
            violations.append(f'{ChainProperty.SINGLE_COVER.value}: {name}_{n} = {poset.element_str(n, element)}'
                              f' covers {len(poset.lower_covers(n, element))} elements')
    return violations + _descent_violations(poset, name, chain)


def _descent_violations(poset: GradedPoset, name: str, chain: Tuple[int, ...]) -> List[str]:
    violations = []
    for n in range(len(chain)):
        image = poset.down(RankVector.basis(n, chain[n]))
        expected = RankVector.basis(n - 1, chain[n - 1]) if n > 0 else RankVector(0)
        if image != expected:
            violations.append(f'{ChainProperty.DESCENT.value}: D {name}_{n} = {image}, expected {expected}')
    return violations


def check_descent(poset: GradedPoset, pair: ChainPair) -> List[str]:
    """D t_n = t_{n-1} and D s_n = s_{n-1}; returns the violations"""
    return _descent_violations(poset, 't', pair.t_chain) + _descent_violations(poset, 's', pair.s_chain)


def _chain_labels(poset: GradedPoset, chain: Tuple[int, ...]) -> List[str]:
    return [poset.element_str(n, i) if n <= poset.top_rank and 0 <= i < poset.rank_sizes[n] else f'{n}:{i}'
            for n, i in enumerate(chain)]


def verify_chain_pair(poset: GradedPoset, pair: ChainPair, r: int) -> ChainReport:
    report = ChainReport(r, _chain_labels(poset, pair.t_chain), _chain_labels(poset, pair.s_chain))
    if pair.top_rank != poset.top_rank:
        report.violations.append(f'{ChainProperty.RANKS.value}: chains reach rank {pair.top_rank},'
                                 f' the poset is stored through rank {poset.top_rank}')
    report.violations += _chain_violations(poset, 't', pair.t_chain)
    report.violations += _chain_violations(poset, 's', pair.s_chain)
    branch = 2 if r == 1 else 1
    for n, (t, s) in enumerate(zip(pair.t_chain, pair.s_chain)):
        if n < branch and t != s:
            report.violations.append(f'{ChainProperty.BRANCHING.value}: t_{n} and s_{n} differ below rank {branch}')
        elif n >= branch and t == s:
            report.violations.append(f'{ChainProperty.BRANCHING.value}: t_{n} = s_{n} at rank {n} >= {branch}')
    if report.passed:
        logger.info(f'Chains: pair verified (r={r})')
    else:
        logger.warning(f'Chains: {len(report.violations)} violations (r={r})')
    return report


def attach_chain_pair(poset: GradedPoset, pair: ChainPair) -> Tuple[GradedPoset, ChainPair]:
    """Reindexes every rank so that t_n comes first; the others keep their relative order

    The permutation is recorded in ``GradedPoset.reindexing`` of the returned poset.
    """
    orders = [(t,) + tuple(i for i in range(size) if i != t) for t, size in zip(pair.t_chain, poset.rank_sizes)]
    reindexed = poset.reindex(orders)
    s_chain = tuple(order.index(s) for order, s in zip(orders, pair.s_chain))
    return reindexed, ChainPair((0,) * len(pair.t_chain), s_chain)


def expected_pairing(r: int, n: int, j: int) -> int:
    """Pairing of U^j t_{n-j} with s_n for a differential poset"""
    if j == n:
        return 1
    if r == 1 and j == n - 1:
        return 1
    return 0


def pairing_profile(poset: GradedPoset, pair: ChainPair, n: int, powers: ChainPowers = None) -> List[Fraction]:
    powers = powers or ChainPowers(poset, pair.t_chain)
    s_n = pair.s(n)
    return [pairing(powers.get(n - j, j), s_n) for j in range(n + 1)]


@dataclasses.dataclass
class PairingReport(Report):
    kind = 'pairing'
    n: int
    r: int
    values: List[Fraction]
    expected: List[int]

    @property
    def passed(self) -> bool:
        return self.values == self.expected

    def summary(self) -> str:
        return f'n={self.n}: <U^j t_(n-j), s_n> for j=0..n = {[str(v) for v in self.values]}'


def check_pairing_profile(poset: GradedPoset, pair: ChainPair, r: int, n: int,
                          powers: ChainPowers = None) -> PairingReport:
    values = pairing_profile(poset, pair, n, powers)
    return PairingReport(n, r, values, [expected_pairing(r, n, j) for j in range(n + 1)])
