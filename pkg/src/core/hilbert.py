"""
Hilbert Data
Hilbert series numerators of monomial ideals and the invariants read off them
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, List, Sequence, Tuple

import sympy

from src.core.ring import Exponent

IntPoly = Tuple[int, ...]


def _trim(p: List[int]) -> IntPoly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def _add(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _mul(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: Sequence[int], k: int) -> IntPoly:
    return _trim([0] * k + list(a))


def _minimalize(gens) -> FrozenSet[Exponent]:
    gens = sorted(set(gens), key=sum)
    kept: List[Exponent] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return frozenset(kept)


@lru_cache(maxsize=1 << 16)
def _numerator(gens: FrozenSet[Exponent]) -> IntPoly:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    gens_list = sorted(gens)
    support = [frozenset(i for i, a in enumerate(g) if a) for g in gens_list]
    counts: Dict[int, int] = {}
    for s in support:
        for i in s:
            counts[i] = counts.get(i, 0) + 1
    if all(c == 1 for c in counts.values()):
        result: IntPoly = (1,)
        for g in gens_list:
            result = _mul(result, _add((1,), _shift((-1,), sum(g))))
        return result
    pivot_var = max(counts, key=lambda i: (counts[i], -i))
    exps = sorted(g[pivot_var] for g in gens_list if g[pivot_var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == pivot_var else 0 for i in range(len(gens_list[0])))
    plus = _minimalize(list(gens) + [pivot])
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens)
    return _add(_numerator(plus), _shift(_numerator(colon), e))


def hilbert_numerator(monomials: Sequence[Exponent]) -> IntPoly:
    """
    Numerator N(t) of the Hilbert series N(t)/(1-t)^n of R/M

    Pivot recursion N(M) = N(M + <p>) + t^deg(p) N(M : p) on a power of the
    most frequent variable, with products of (1 - t^deg) once the generators
    are pairwise coprime.
    """
    return _numerator(_minimalize(tuple(m) for m in monomials))


def _divide_one_minus_t(p: Sequence[int]) -> IntPoly:
    """Quotient of p(t) by (1 - t); p(1) must vanish."""
    q: List[int] = []
    acc = 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return _trim(q or [0])


@dataclass
class HilbertData:
    """
    Hilbert function, polynomial and numerical invariants of R/I

    Args:
        nvars: number of variables of the standard graded ring R
        numerator: coefficients of N(t), lowest degree first
    """
    nvars: int
    numerator: IntPoly
    reduced_numerator: IntPoly = field(init=False)
    krull_dim: int = field(init=False)
    hp_coefficients: List[Fraction] = field(init=False)

    def __post_init__(self):
        num = tuple(self.numerator)
        if not any(num):
            self.reduced_numerator = (0,)
            self.krull_dim = -1
            self.hp_coefficients = []
            return
        c = 0
        q = num
        while sum(q) == 0:
            q = _divide_one_minus_t(q)
            c += 1
        self.reduced_numerator = q
        self.krull_dim = self.nvars - c
        self.hp_coefficients = self._polynomial_coefficients()

    @classmethod
    def from_leading_monomials(cls, monomials: Sequence[Exponent], nvars: int) -> "HilbertData":
        return cls(nvars, hilbert_numerator(monomials) if monomials else (1,))

    def _polynomial_coefficients(self) -> List[Fraction]:
        d = self.krull_dim
        if d <= 0:
            return []
        m = sympy.Symbol("m")
        expr = sympy.Integer(0)
        for j, qj in enumerate(self.reduced_numerator):
            if qj:
                term = sympy.Integer(qj)
                for i in range(1, d):
                    term *= (m - j + i)
                expr += term / sympy.factorial(d - 1)
        poly = sympy.Poly(sympy.expand(expr), m)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return coeffs

    # invariants

    @property
    def codim(self) -> int:
        return self.nvars - max(self.krull_dim, 0)

    @property
    def projective_dim(self) -> int:
        return self.krull_dim - 1

    @property
    def degree(self) -> int:
        if self.krull_dim <= 0:
            return 0
        return sum(self.reduced_numerator)

    @property
    def length(self) -> int:
        """Vector-space dimension of R/I when it is finite."""
        return sum(self.reduced_numerator) if self.krull_dim == 0 else 0

    @property
    def is_empty_scheme(self) -> bool:
        return self.krull_dim <= 0

    @property
    def genus(self) -> int:
        """Arithmetic genus 1 - p(0) of a curve."""
        if self.projective_dim != 1:
            raise ValueError(f"genus is defined for curves, this scheme has dimension {self.projective_dim}")
        return int(1 - self.hilbert_polynomial(0))

    @property
    def regularity_bound(self) -> int:
        """Smallest m from which the Hilbert function equals the polynomial."""
        if self.krull_dim < 0:
            return 0
        return max(len(self.reduced_numerator) - 1 - self.krull_dim + 1, 0)

    def hilbert_function(self, m: int) -> int:
        if m < 0:
            return 0
        n = self.nvars
        return sum(c * comb(m - j + n - 1, n - 1) for j, c in enumerate(self.numerator) if m - j >= 0)

    def hilbert_polynomial(self, m: int) -> Fraction:
        return sum((c * m ** i for i, c in enumerate(self.hp_coefficients)), Fraction(0))

    def hilbert_series(self, upto: int) -> List[int]:
        return [self.hilbert_function(m) for m in range(upto + 1)]

    def to_dict(self, window: Tuple[int, int] = (0, 10)) -> Dict:
        data = {
            "numerator": list(self.numerator),
            "krull_dim": self.krull_dim,
            "codim": self.codim,
            "degree": self.degree,
            "hilbert_polynomial": [str(c) for c in self.hp_coefficients],
            "hilbert_function": {str(m): self.hilbert_function(m) for m in range(window[0], window[1] + 1)},
            "regularity_bound": self.regularity_bound,
        }
        if self.projective_dim == 1:
            data["genus"] = self.genus
        return data
