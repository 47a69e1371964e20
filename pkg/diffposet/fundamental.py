"""diffposet fundamental vectors

For an r-differential poset and a positive integer k, the vector

    v_{n,k} = sum_{j=0}^{n} (-1)^j U^j t_{n-j} / (j+1)!_{r,k}

satisfies (DU_n + kI) v_{n,k} = t_n, so it is the t_n column of (DU_n + kI)^-1.
"""

import dataclasses
import logging
import math
from typing import List

from .chains import ChainPair, ChainPowers
from .exceptions import PosetStructureError
from .posets import GradedPoset, RankVector, resolve_r
from .reports import Report

logger = logging.getLogger(__name__)


def rising_factorial(r: int, k: int, ell: int) -> int:
    """(r*ell + k)(r*(ell-1) + k)...(r + k), and 1 for ell = 0"""
    if r < 1 or k < 1 or ell < 0:
        raise PosetStructureError(f'rising factorial needs r >= 1, k >= 1, ell >= 0 (got {r}, {k}, {ell})')
    return math.prod(r * i + k for i in range(1, ell + 1))


def multiplier_bound(r: int, n: int, k: int) -> int:
    """The divisor of the last Smith entry of DU_n + kI: (n+1)!_{r,k} for r >= 2, (n-1)!_{1,k}(n+1+k) for r = 1"""
    if n < 1:
        raise PosetStructureError(f'the bound is stated for n >= 1, got {n}')
    if r == 1:
        return rising_factorial(1, k, n - 1) * (n + 1 + k)
    return rising_factorial(r, k, n + 1)


@dataclasses.dataclass(frozen=True)
class FundamentalVector:
    n: int
    k: int
    r: int
    value: RankVector

    @property
    def denominator(self) -> int:
        return self.value.common_denominator()


def _check_k(k: int):
    if k < 1:
        raise PosetStructureError(f'k must be a positive integer, got {k}')


def _check_n(poset: GradedPoset, pair: ChainPair, n: int):
    # DU_n needs rank n + 1
    poset.check_rank(n, 0, min(poset.top_rank - 1, pair.top_rank))


def compute_v(poset: GradedPoset, pair: ChainPair, n: int, k: int, r: int = None,
              powers: ChainPowers = None) -> FundamentalVector:
    _check_k(k)
    _check_n(poset, pair, n)
    r = resolve_r(poset, r)
    powers = powers or ChainPowers(poset, pair.t_chain)
    value = RankVector(n)
    for j in range(n + 1):
        term = powers.get(n - j, j) / rising_factorial(r, k, j + 1)
        value = value - term if j % 2 else value + term
    return FundamentalVector(n, k, r, value)


def compute_v_r1_form(poset: GradedPoset, pair: ChainPair, n: int, k: int,
                      powers: ChainPowers = None) -> FundamentalVector:
    """The r = 1 rewriting in which the last two terms merge into U^n t_0 / ((n-1)!_{1,k} (n+1+k))"""
    _check_k(k)
    _check_n(poset, pair, n)
    r = resolve_r(poset)
    if r != 1:
        raise PosetStructureError(f'the merged form only holds for r = 1, the poset has r = {r}')
    if n < 1:
        raise PosetStructureError('the merged form needs n >= 1')
    powers = powers or ChainPowers(poset, pair.t_chain)
    value = RankVector(n)
    for j in range(n - 1):
        term = powers.get(n - j, j) / rising_factorial(1, k, j + 1)
        value = value - term if j % 2 else value + term
    last = powers.get(0, n) / (rising_factorial(1, k, n - 1) * (n + 1 + k))
    value = value - last if (n - 1) % 2 else value + last
    return FundamentalVector(n, k, 1, value)


def compute_v_recursive(poset: GradedPoset, pair: ChainPair, n: int, k: int, r: int = None) -> FundamentalVector:
    """v_{0,k} = t_0/(r+k) and v_{n,k} = (t_n - U v_{n-1,r+k}) / (r+k)"""
    _check_k(k)
    _check_n(poset, pair, n)
    r = resolve_r(poset, r)
    # shifts k, k + r, k + 2r, ... are consumed from the top rank down
    shifts = [k + r * i for i in range(n + 1)]
    value = pair.t(0) / (r + shifts[n])
    for m in range(1, n + 1):
        shift = shifts[n - m]
        value = (pair.t(m) - poset.up(value)) / (r + shift)
    return FundamentalVector(n, k, r, value)


def minimal_integral_multiplier(v: FundamentalVector) -> int:
    """Smallest positive s with s * v integral"""
    return v.denominator


@dataclasses.dataclass
class IdentityReport(Report):
    kind = 'fundamental'
    n: int
    k: int
    r: int
    v: RankVector
    residual: RankVector
    multiplier: int
    bound: int = None
    r1_form_equal: bool = None
    recursive_equal: bool = None

    @property
    def passed(self) -> bool:
        return (not self.residual
                and self.bound in (None, self.multiplier)
                and self.r1_form_equal is not False
                and self.recursive_equal is not False)

    def summary(self) -> str:
        text = f'n={self.n} k={self.k}: (DU+kI)v - t_n = {self.residual}, multiplier {self.multiplier}'
        if self.bound is not None:
            text += f' (bound {self.bound})'
        return text

    def details(self) -> List[str]:
        lines = [f'v = {self.v}']
        if self.r1_form_equal is not None:
            lines.append(f'merged r=1 form equal: {self.r1_form_equal}')
        if self.recursive_equal is not None:
            lines.append(f'recursive form equal: {self.recursive_equal}')
        return lines


def apply_shifted_du(poset: GradedPoset, vector: RankVector, k: int) -> RankVector:
    """(DU_n + kI) applied to a vector of rank n"""
    return poset.down(poset.up(vector)) + vector * k


def verify_fundamental_identity(poset: GradedPoset, pair: ChainPair, n: int, k: int, r: int = None,
                                powers: ChainPowers = None, cross_check: bool = False) -> IdentityReport:
    """Checks (DU_n + kI) v_{n,k} = t_n exactly

    With ``cross_check`` the multiplier is compared to its claimed value and v is recomputed through
    the recursion and (for r = 1) through the merged form.
    """
    powers = powers or ChainPowers(poset, pair.t_chain)
    v = compute_v(poset, pair, n, k, r, powers)
    residual = apply_shifted_du(poset, v.value, k) - pair.t(n)
    report = IdentityReport(n, k, v.r, v.value, residual, minimal_integral_multiplier(v))
    if cross_check:
        if n >= 1:
            report.bound = multiplier_bound(v.r, n, k)
        report.recursive_equal = compute_v_recursive(poset, pair, n, k, v.r).value == v.value
        if v.r == 1 and n >= 1:
            report.r1_form_equal = compute_v_r1_form(poset, pair, n, k, powers).value == v.value
    if report.passed:
        logger.info(f'Fundamental: n={n} k={k} passes, multiplier {report.multiplier}')
    else:
        logger.warning(f'Fundamental: n={n} k={k} fails, residual {residual}')
    return report
