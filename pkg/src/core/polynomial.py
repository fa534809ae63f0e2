"""
Sparse Polynomials
Exact multivariate polynomials as exponent-tuple -> coefficient mappings
"""

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.core.ring import Exponent, PolyRing
from src.utils.errors import RingMismatchError


class Polynomial:
    """
    Immutable sparse polynomial in a PolyRing

    Zero coefficients are never stored. Equality and hashing only depend on
    the term mapping, so two polynomials built in different ways compare
    equal exactly when they are the same element.

    Args:
        ring: the ring the polynomial lives in
        terms: mapping exponent tuple -> field element (zeros are dropped)
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exponent, object]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # structure

    @property
    def terms(self) -> Dict[Exponent, object]:
        return self._terms

    def sorted_terms(self) -> List[Tuple[Exponent, object]]:
        """Terms in decreasing order for the ring's monomial order."""
        key = self.ring.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, object]]:
        return iter(self.sorted_terms())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def degree(self) -> int:
        """Weighted degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(self.ring.degree_of(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degrees = {self.ring.degree_of(e) for e in self._terms}
        return len(degrees) <= 1

    def leading_monomial(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.ring.key)

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def variables_used(self) -> List[int]:
        return sorted({i for e in self._terms for i, a in enumerate(e) if a})

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.ring is not other.ring and not self.ring.compatible(other.ring):
            raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        F = self.ring.field
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = F.add(terms[e], c) if e in terms else c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field(other))
        self._check(other)
        F = self.ring.field
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                terms[e] = F.add(terms[e], c) if e in terms else c
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, {e: F.mul(a, c) for e, a in self._terms.items()})

    def mul_monomial(self, exp: Exponent, c=None) -> "Polynomial":
        F = self.ring.field
        c = F.one() if c is None else c
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exp)): F.mul(a_c, c)
                                      for e, a_c in self._terms.items()})

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ValueError on a remainder."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lm_d = divisor.leading_monomial()
        inv_lc = F.inv(divisor._terms[lm_d])
        remainder = self
        quotient: Dict[Exponent, object] = {}
        while remainder:
            lm = remainder.leading_monomial()
            shift = tuple(a - b for a, b in zip(lm, lm_d))
            if min(shift) < 0:
                raise ValueError("division is not exact")
            c = F.mul(remainder._terms[lm], inv_lc)
            quotient[shift] = c
            remainder = remainder - divisor.mul_monomial(shift, c)
        return Polynomial(self.ring, quotient)

    def variable_power(self, i: int) -> int:
        """Largest k with x_i^k dividing every term."""
        if not self._terms:
            return 0
        return min(e[i] for e in self._terms)

    def divide_variable_power(self, i: int, k: int) -> "Polynomial":
        return Polynomial(self.ring, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in self._terms.items()})

    def derivative(self, i: int) -> "Polynomial":
        F = self.ring.field
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = F.mul(c, F(e[i]))
        return Polynomial(self.ring, terms)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self._terms.items() if self.ring.degree_of(e) == degree})

    # evaluation and substitution

    def evaluate(self, point: Sequence):
        F = self.ring.field
        values = [F(v) for v in point]
        total = F.zero()
        for e, c in self._terms.items():
            term = c
            for v, a in zip(values, e):
                if a:
                    term = F.mul(term, pow(v, a, F.modulus) if F.modulus else v ** a)
            total = F.add(total, term)
        return total

    def substitute(self, images: Sequence["Polynomial"], target: Optional[PolyRing] = None) -> "Polynomial":
        """Image under the ring map sending variable i to images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or images[0].ring
        result = target.zero()
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for e, c in self._terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    if (i, a) not in powers:
                        powers[(i, a)] = images[i] ** a
                    term = term * powers[(i, a)]
            result = result + term
        return result

    def in_ring(self, ring: PolyRing) -> "Polynomial":
        """Same polynomial viewed in a ring with the same field and a superset of variables."""
        if ring.compatible(self.ring):
            return Polynomial(ring, self._terms)
        positions = [ring.index(v) for v in self.ring.variables]
        terms = {}
        for e, c in self._terms.items():
            new = [0] * ring.nvars
            for p, a in zip(positions, e):
                new[p] = a
            terms[tuple(new)] = ring.field(c) if ring.field != self.ring.field else c
        return Polynomial(ring, terms)

    # comparison and printing

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.compatible(other.ring) and self._terms == other._terms
        if self.is_constant():
            return self._terms.get(self.ring.zero_exponent(), 0) == self.ring.field(other)
        return False

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        F = self.ring.field
        pieces = []
        for e, c in self.sorted_terms():
            text = F.to_str(c)
            negative = text.startswith("-")
            text = text.lstrip("-")
            mono = self.ring.monomial_str(e)
            if mono == "1":
                body = text
            elif text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"
