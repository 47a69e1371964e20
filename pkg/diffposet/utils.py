"""diffposet utilities"""

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Tuple

from django.core.serializers.json import DjangoJSONEncoder
from sympy import Poly

from .exceptions import RunConfigError


def format_element_str(rank: int, index: int, label: str = None) -> str:
    """Returns a string with the rank-local position of an element and its label (if any)"""
    result = f'{rank}:{index}'
    if label:
        result += f' "{label}"'
    return result


def fraction_str(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def lcm_of_denominators(values: Iterable) -> int:
    """Least common multiple of the denominators (in lowest terms) of the given rationals"""
    result = 1
    for value in values:
        result = math.lcm(result, Fraction(value).denominator)
    return result


def parse_int_range(text: str, minimum: int = None) -> Tuple[int, ...]:
    """Parses '5', '1..3' (inclusive) or '1,2,5' into a sorted tuple of distinct integers"""
    values = set()
    try:
        for part in str(text).split(','):
            part = part.strip()
            if '..' in part:
                low, high = part.split('..', 1)
                low, high = int(low), int(high)
                if low > high:
                    raise RunConfigError(f'empty range "{part}"')
                values.update(range(low, high + 1))
            elif part:
                values.add(int(part))
    except ValueError as exc:
        if isinstance(exc, RunConfigError):
            raise
        raise RunConfigError(f'invalid integer range "{text}"') from exc
    if not values:
        raise RunConfigError(f'invalid integer range "{text}"')
    if minimum is not None and min(values) < minimum:
        raise RunConfigError(f'range "{text}" has values below {minimum}')
    return tuple(sorted(values))


class RecordJSONEncoder(DjangoJSONEncoder):
    """DjangoJSONEncoder that also understands exact rationals and sympy polynomials"""

    def default(self, o):
        if isinstance(o, Fraction):
            return fraction_str(o)
        if isinstance(o, Poly):
            return str(o.as_expr())
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            return dataclasses.asdict(o)
        return super().default(o)
