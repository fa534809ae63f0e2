"""
Polynomial Matrices
Determinants, maximal minors, the tensor flip and Jacobians
"""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.linalg import rank
from src.core.polynomial import Polynomial
from src.core.ring import PolyRing
from src.utils.errors import PreconditionError, RingMismatchError


class PolyMatrix:
    """
    Dense matrix of polynomials sharing one ring

    Args:
        ring: ring of every entry
        rows: row-major nested list of Polynomial
    """

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must have positive dimensions")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        for r in rows:
            for p in r:
                if not p.ring.compatible(ring):
                    raise RingMismatchError(f"entry {p} is not in {ring!r}")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0])

    def __getitem__(self, ij: Tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols})"

    def to_text(self) -> str:
        """Matrix-file form: ring line, then rows with ``;`` separators."""
        lines = [self.ring.declaration()]
        lines += ["; ".join(str(p) for p in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def swap_rows(self, i: int, j: int) -> "PolyMatrix":
        rows = [list(r) for r in self.rows]
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(self.ring, rows)

    def is_linear(self) -> bool:
        """Every nonzero entry is a linear form."""
        return all(p.is_zero() or (p.is_homogeneous() and p.degree() == 1) for row in self.rows for p in row)

    def is_homogeneous(self) -> bool:
        return all(p.is_homogeneous() for row in self.rows for p in row)

    def evaluate(self, point: Sequence) -> List[List]:
        return [[p.evaluate(point) for p in row] for row in self.rows]

    def rank_at(self, point: Sequence) -> int:
        return rank(self.evaluate(point), self.ncols, self.ring.field)

    def minor(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> Polynomial:
        sub = PolyMatrix(self.ring, [[self.rows[i][j] for j in col_idx] for i in row_idx])
        return determinant(sub)


def determinant(m: PolyMatrix) -> Polynomial:
    """
    Exact determinant by cofactor expansion along the top row

    Minors are memoized on (first row, remaining columns), so a matrix of
    size n costs O(n 2^n) polynomial products.
    """
    if m.nrows != m.ncols:
        raise PreconditionError(f"determinant of a non-square {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    memo: Dict[Tuple[int, Tuple[int, ...]], Polynomial] = {}

    def expand(r: int, cols: Tuple[int, ...]) -> Polynomial:
        if r == n - 1:
            return m.rows[r][cols[0]]
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = m.ring.zero()
        for pos, c in enumerate(cols):
            entry = m.rows[r][c]
            if entry.is_zero():
                continue
            sub = expand(r + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return expand(0, tuple(range(n)))


def maximal_minors(m: PolyMatrix) -> List[Polynomial]:
    """All maximal minors, in lexicographic order of the chosen rows (or columns)."""
    k = min(m.nrows, m.ncols)
    if m.nrows >= m.ncols:
        cols = list(range(m.ncols))
        return [m.minor(rows, cols) for rows in itertools.combinations(range(m.nrows), k)]
    rows = list(range(m.nrows))
    return [m.minor(rows, cols) for cols in itertools.combinations(range(m.ncols), k)]


def default_target_ring(source: PolyRing, nvars: int, prefix: str = "t") -> PolyRing:
    return PolyRing(source.field, [f"{prefix}{i}" for i in range(nvars)])


def tensor_flip(m: PolyMatrix, target: Optional[PolyRing] = None) -> PolyMatrix:
    """
    Reinterpret an a x b matrix of linear forms in c variables as a c x b
    matrix of linear forms in a variables

    Entry N[v][j] = sum_i (coefficient of source variable v in m[i][j]) * t_i.
    """
    if not m.is_linear():
        raise PreconditionError("tensor_flip needs a matrix of linear forms")
    a, b, c = m.nrows, m.ncols, m.ring.nvars
    target = target or default_target_ring(m.ring, a)
    if target.nvars != a:
        raise PreconditionError(f"target ring needs {a} variables, has {target.nvars}")
    if target.field != m.ring.field:
        raise RingMismatchError("tensor_flip target must share the coefficient field")
    F = m.ring.field
    rows = []
    for v in range(c):
        unit = m.ring.unit_exponent(v)
        row = []
        for j in range(b):
            terms = {}
            for i in range(a):
                coeff = m.rows[i][j].terms.get(unit)
                if coeff:
                    terms[target.unit_exponent(i)] = coeff
            row.append(Polynomial(target, terms))
        rows.append(row)
    return PolyMatrix(target, rows)


def jacobian_matrix(gens: Sequence[Polynomial]) -> PolyMatrix:
    """Rows are the generators, columns the ring variables."""
    if not gens:
        raise PreconditionError("jacobian of an empty generator list")
    ring = gens[0].ring
    return PolyMatrix(ring, [[g.derivative(i) for i in range(ring.nvars)] for g in gens])


def determinantal_hypersurface(m: PolyMatrix, target: Optional[PolyRing] = None) -> Tuple[PolyMatrix, Polynomial]:
    """
    Flip a (c+1) x c matrix of linear forms in c variables and take det

    Returns the flipped c x c matrix in c+1 variables and its determinant, a
    form of degree c (a quartic threefold in P^4 when c = 4).
    """
    c = m.ring.nvars
    if m.ncols != c or m.nrows != c + 1:
        raise PreconditionError(f"expected a {c + 1}x{c} matrix of linear forms in {c} variables, got {m.nrows}x{m.ncols}")
    flipped = tensor_flip(m, target)
    return flipped, determinant(flipped)
