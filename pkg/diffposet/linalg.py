"""diffposet exact dense linear algebra

Integer matrices are plain lists of rows of Python ints. Determinants and inverses go through sympy
domain matrices over ZZ and QQ.
"""

from fractions import Fraction
from typing import List, Sequence, Union

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .exceptions import PosetStructureError, SingularMatrixError
from .posets import SparseIntMatrix

Dense = List[List[int]]


def dense(matrix: Union[SparseIntMatrix, Sequence[Sequence[int]]]) -> Dense:
    """Mutable dense copy of a sparse or dense matrix"""
    if isinstance(matrix, SparseIntMatrix):
        return matrix.to_dense()
    return [list(row) for row in matrix]


def identity(size: int) -> Dense:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Dense:
    if a and len(a[0]) != len(b):
        raise PosetStructureError(f'cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}')
    columns = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, column)) for column in columns] for row in a]


def _square(rows: Dense) -> int:
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise PosetStructureError('matrix is not square')
    return size


def _domain_matrix(rows: Dense) -> DomainMatrix:
    size = _square(rows)
    return DomainMatrix([[ZZ(x) for x in row] for row in rows], (size, size), ZZ)


def determinant(matrix: Union[SparseIntMatrix, Sequence[Sequence[int]]]) -> int:
    """Exact determinant (fraction-free elimination over ZZ)"""
    m = dense(matrix)
    if not m:
        return 1
    return int(_domain_matrix(m).det())


def inverse(matrix: Union[SparseIntMatrix, Sequence[Sequence[int]]]) -> List[List[Fraction]]:
    """Exact rational inverse"""
    m = dense(matrix)
    if not m:
        return []
    try:
        result = _domain_matrix(m).to_field().inv()
    except DMNonInvertibleMatrixError:
        raise SingularMatrixError(f'{len(m)}x{len(m)} matrix is singular') from None
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in result.to_Matrix().tolist()]
