"""diffposet spectra

The factorization det(DU_n + tI) = prod_{i=0..n} (t + r(i+1))^(p_{n-i} - p_{n-i-1}), weak rank growth,
and certificates of strict rank growth built from one prime r + k.
"""

import dataclasses
import logging
import math
from typing import List, Sequence, Tuple

from sympy import QQ, ZZ, Poly, Rational, isprime, nextprime, symbols

from .exceptions import CertificateError, RunConfigError
from .linalg import determinant
from .posets import GradedPoset, du_matrix, resolve_r
from .reports import Report
from .smith import smith_form

logger = logging.getLogger(__name__)

t = symbols('t')


def rank_differences(rank_sizes: Sequence[int]) -> List[int]:
    """[p_0, p_1 - p_0, p_2 - p_1, ...]"""
    return [size - (rank_sizes[n - 1] if n else 0) for n, size in enumerate(rank_sizes)]


@dataclasses.dataclass(frozen=True)
class SpectrumFactorization:
    n: int
    r: int
    # (root r(i+1), multiplicity p_{n-i} - p_{n-i-1}) for i = 0..n
    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_rank_sizes(cls, rank_sizes: Sequence[int], n: int, r: int) -> 'SpectrumFactorization':
        delta = rank_differences(rank_sizes[:n + 1])
        return cls(n, r, tuple((r * (i + 1), delta[n - i]) for i in range(n + 1)))

    @property
    def weakly_growing(self) -> bool:
        return all(multiplicity >= 0 for _, multiplicity in self.factors)

    @property
    def degree(self) -> int:
        return sum(multiplicity for _, multiplicity in self.factors)

    def polynomial(self) -> Poly:
        if not self.weakly_growing:
            raise CertificateError(f'negative multiplicity in {self}')
        result = Poly(1, t)
        for root, multiplicity in self.factors:
            if multiplicity:
                result *= Poly(t + root, t) ** multiplicity
        return result

    def evaluate(self, value: int) -> int:
        return math.prod((value + root) ** multiplicity for root, multiplicity in self.factors)

    def __str__(self):
        return ' '.join(f'(t+{root})^{multiplicity}' for root, multiplicity in self.factors)


def characteristic_polynomial(poset: GradedPoset, n: int) -> Poly:
    """det(DU_n + tI) as an integer polynomial in t

    The determinant is evaluated at t = 0..p_n and interpolated in the Newton basis of falling
    factorials, the forward differences giving the coefficients.
    """
    size = poset.rank_sizes[n]
    values = [determinant(du_matrix(poset, n, shift)) for shift in range(size + 1)]
    result = Poly(0, t, domain=QQ)
    falling = Poly(1, t, domain=QQ)
    for i in range(size + 1):
        if values[0]:
            result += falling.mul_ground(Rational(values[0], math.factorial(i)))
        values = [b - a for a, b in zip(values, values[1:])]
        falling *= Poly(t - i, t, domain=QQ)
    return result.set_domain(ZZ)


@dataclasses.dataclass
class SpectrumReport(Report):
    kind = 'spectrum'
    n: int
    r: int
    computed: Poly
    expected: Poly
    factorization: SpectrumFactorization

    @property
    def passed(self) -> bool:
        return self.expected is not None and self.computed == self.expected

    def summary(self) -> str:
        return f'n={self.n}: det(DU+tI) = {self.factorization}: {"identical" if self.passed else "differs"}'

    def details(self) -> List[str]:
        return [f'computed: {self.computed.as_expr()}',
                f'product: {self.expected.as_expr() if self.expected is not None else "negative multiplicity"}']


def char_poly_factor_check(poset: GradedPoset, n: int, r: int = None) -> SpectrumReport:
    poset.check_rank(n, 0, poset.top_rank - 1)
    r = resolve_r(poset, r)
    factorization = SpectrumFactorization.from_rank_sizes(poset.rank_sizes, n, r)
    expected = factorization.polynomial() if factorization.weakly_growing else None
    report = SpectrumReport(n, r, characteristic_polynomial(poset, n), expected, factorization)
    if report.passed:
        logger.info(f'Spectrum: n={n} factorization verified')
    else:
        logger.warning(f'Spectrum: n={n} determinant does not factor as {factorization}')
    return report


@dataclasses.dataclass
class GrowthReport(Report):
    kind = 'growth'
    rank_sizes: List[int]

    @property
    def decreases(self) -> List[int]:
        """Ranks n with p_n < p_{n-1}"""
        return [n for n in range(1, len(self.rank_sizes)) if self.rank_sizes[n] < self.rank_sizes[n - 1]]

    @property
    def passed(self) -> bool:
        return not self.decreases

    def record_extras(self) -> dict:
        return {'decreases': self.decreases}

    def summary(self) -> str:
        if self.passed:
            return f'rank sizes weakly increase through rank {len(self.rank_sizes) - 1}'
        return f'rank sizes decrease at ranks {self.decreases}'


def weak_growth_check(poset: GradedPoset) -> GrowthReport:
    report = GrowthReport(list(poset.rank_sizes))
    if not report.passed:
        logger.warning(f'Spectrum: rank sizes decrease at {report.decreases}')
    return report


def choose_prime_k(r: int, n: int) -> Tuple[int, int]:
    """Smallest prime p > (n+1)r and k = p - r; p divides none of 2r+k, ..., (n+1)r+k"""
    if r < 1 or n < 2:
        raise RunConfigError(f'prime selection needs r >= 1 and n >= 2 (got r={r}, n={n})')
    prime = nextprime((n + 1) * r)
    k = prime - r
    for i in range(2, n + 2):
        if (i * r + k) % prime == 0:
            raise CertificateError(f'{prime} divides {i * r + k}')
    return prime, k


@dataclasses.dataclass
class GrowthCertificate(Report):
    """Trace of the argument that p_n > p_{n-1}

    The prime p = r + k divides the last Smith entry of DU_n + kI, hence det(DU_n + kI), and among the
    factors (k + r(i+1)) it divides only the first, whose exponent is p_n - p_{n-1}.
    """
    kind = 'certificate'
    n: int
    r: int
    prime: int
    k: int
    last_entry: int
    determinant: int
    factorization: SpectrumFactorization
    delta: int

    @property
    def dividing_factors(self) -> List[int]:
        """Roots r(i+1) for which p divides k + r(i+1)"""
        return [root for root, _ in self.factorization.factors if (self.k + root) % self.prime == 0]

    @property
    def concluded(self) -> bool:
        """The growth conclusion drawn from divisibility alone, without counting"""
        return (self.last_entry % self.prime == 0 and self.determinant % self.last_entry == 0
                and self.dividing_factors == [self.r])

    def recheck(self) -> List[str]:
        """Re-asserts every step; returns the names of failed checks"""
        failures = []
        if not isprime(self.prime):
            failures.append('prime')
        if self.prime <= (self.n + 1) * self.r or self.prime != self.r + self.k:
            failures.append('prime-selection')
        if self.last_entry % self.prime:
            failures.append('divides-last-entry')
        if self.determinant % self.last_entry:
            failures.append('last-entry-divides-determinant')
        if self.factorization.evaluate(self.k) != self.determinant:
            failures.append('factorization')
        if self.dividing_factors != [self.r]:
            failures.append('unique-factor')
        if self.delta <= 0 or self.factorization.factors[0][1] != self.delta:
            failures.append('direct-count')
        return failures

    @property
    def passed(self) -> bool:
        return not self.recheck()

    def record_extras(self) -> dict:
        return {'concluded': self.concluded, 'failed_checks': self.recheck()}

    def summary(self) -> str:
        return (f'n={self.n}: prime {self.prime} = r + {self.k} divides last Smith entry {self.last_entry}'
                f' and only the (t+{self.r}) factor, so p_{self.n} - p_{self.n - 1} = {self.delta} > 0')

    def details(self) -> List[str]:
        return [f'det(DU+{self.k}I) = {self.determinant} = {self.factorization} at t={self.k}']


def certify_strict_growth(poset: GradedPoset, r: int, n: int) -> GrowthCertificate:
    """Runs the strict growth argument at rank n; raises CertificateError if any step fails"""
    poset.check_rank(n, 2, poset.top_rank - 1)
    r = resolve_r(poset, r)
    prime, k = choose_prime_k(r, n)
    matrix = du_matrix(poset, n, k)
    decomposition = smith_form(matrix)
    factorization = SpectrumFactorization.from_rank_sizes(poset.rank_sizes, n, r)
    delta = poset.rank_sizes[n] - poset.rank_sizes[n - 1]
    certificate = GrowthCertificate(n, r, prime, k, decomposition.last_entry, determinant(matrix), factorization,
                                    delta)
    failures = certificate.recheck()
    if failures:
        logger.warning(f'Spectrum: growth certificate at n={n} fails: {", ".join(failures)}')
        raise CertificateError(f'growth certificate at n={n} fails: {", ".join(failures)}')
    logger.info(f'Spectrum: n={n} strict growth certified with prime {prime} (k={k})')
    return certificate
