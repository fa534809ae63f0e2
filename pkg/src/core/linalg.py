"""
Exact Linear Algebra
Row reduction, rank and kernels over GF(p) (numpy) and QQ (sympy)
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.core.field import CoefficientField

Rows = List[List]

INT64_SAFE_PRIME = 1 << 31


def _rref_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Tuple[np.ndarray, List[int]]:
    dtype = np.int64 if p < INT64_SAFE_PRIME else object
    A = np.array(rows, dtype=dtype).reshape(len(rows), ncols) % p
    nrows = A.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_rational(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[Rows, List[int]]:
    data = [[QQ(int(Fraction(a).numerator), int(Fraction(a).denominator)) for a in row] for row in rows]
    dm = DomainMatrix(data, (len(rows), ncols), QQ)
    reduced, pivots = dm.rref()
    mat = reduced.to_Matrix()
    out = [[Fraction(int(mat[i, j].p), int(mat[i, j].q)) for j in range(ncols)] for i in range(len(pivots))]
    return out, list(pivots)


def rref(rows: Sequence[Sequence], ncols: int, field: CoefficientField) -> Tuple[Rows, List[int]]:
    """
    Reduced row echelon form

    Args:
        rows: matrix rows of field elements
        ncols: number of columns (needed when there are no rows)
        field: coefficient field

    Returns:
        Tuple of (nonzero reduced rows, pivot column indices)
    """
    if not rows or ncols == 0:
        return [], []
    if field.is_prime_field:
        reduced, pivots = _rref_mod_p(rows, ncols, field.modulus)
        return reduced.tolist(), pivots
    return _rref_rational(rows, ncols)


def rank(rows: Sequence[Sequence], ncols: int, field: CoefficientField) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: CoefficientField) -> Rows:
    """Basis of the right kernel {v : A v = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    basis: Rows = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero()] * ncols
        v[free] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(field(reduced[r][free]))
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence], ncols: int) -> Rows:
    return [[row[j] for row in rows] for j in range(ncols)]


def left_kernel(rows: Sequence[Sequence], ncols: int, field: CoefficientField) -> Rows:
    """Basis of {u : u A = 0}."""
    return nullspace(transpose(rows, ncols), len(rows), field)


def independent_rows(rows: Sequence[Sequence], ncols: int, field: CoefficientField) -> List[int]:
    """Indices of the greedily chosen maximal independent subset of rows, in order."""
    if not rows:
        return []
    return rref(transpose(rows, ncols), len(rows), field)[1]
