"""
Polynomial Rings and Monomial Orders
Variables, gradings, integer sort keys and packed exponent vectors
"""

from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.field import CoefficientField
from src.utils.errors import ParseError, ResourceBudgetError, RingMismatchError

Exponent = Tuple[int, ...]

KEY_BASE = 1 << 16
PACK_WIDTH = 8
PACK_MAX_VARS = 8


class MonomialOrder:
    """
    Monomial order encoded as an integer sort key (larger key, larger monomial)

    Args:
        name: "grevlex", "lex" or "elim"
        split: for "elim", the number of leading variables to eliminate;
            monomials are compared by total degree in that block first,
            then by weighted grevlex on all variables
    """

    NAMES = ("grevlex", "lex", "elim")

    def __init__(self, name: str = "grevlex", split: int = 0):
        if name not in self.NAMES:
            raise ValueError(f"unknown monomial order {name!r}")
        if name == "elim" and split < 1:
            raise ValueError("elimination order needs split >= 1")
        self.name = name
        self.split = split if name == "elim" else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.name, self.split) == (other.name, other.split)

    def __hash__(self) -> int:
        return hash((self.name, self.split))

    def __repr__(self) -> str:
        return f"elim({self.split})" if self.name == "elim" else self.name

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        if text.startswith("elim(") and text.endswith(")"):
            return cls("elim", int(text[5:-1]))
        return cls(text)

    def coefficients(self, weights: Sequence[int]) -> Tuple[int, ...]:
        """Linear form whose value on an exponent vector is its sort key.

        The key is additive, so the key of a product is the sum of the keys.
        Exact for exponents below KEY_BASE and weighted degrees below KEY_BASE.
        """
        n = len(weights)
        if self.name == "lex":
            return tuple(KEY_BASE ** (n - 1 - i) for i in range(n))
        coeffs = [w * KEY_BASE ** n - KEY_BASE ** i for i, w in enumerate(weights)]
        for i in range(self.split):
            coeffs[i] += KEY_BASE ** (n + 1)
        return tuple(coeffs)

    def key(self, exp: Exponent, weights: Sequence[int]) -> int:
        return sum(e * c for e, c in zip(exp, self.coefficients(weights)))


class ExponentCodec:
    """
    Packs exponent vectors into one integer, 8-bit fields under guard bits

    Up to eight variables fit a 72-bit word. Multiplying monomials is integer
    addition and divisibility is a single subtraction and mask, as long as
    every exponent stays below 256.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.single_word = nvars <= PACK_MAX_VARS
        self.field_bits = PACK_WIDTH + 1
        self.guard = 0
        for i in range(nvars):
            self.guard |= 1 << (i * self.field_bits + PACK_WIDTH)

    def pack(self, exp: Exponent) -> int:
        packed = 0
        for i, e in enumerate(exp):
            if e >= 1 << PACK_WIDTH:
                raise ResourceBudgetError("exponent", (1 << PACK_WIDTH) - 1)
            packed |= e << (i * self.field_bits)
        return packed

    def unpack(self, packed: int) -> Exponent:
        mask = (1 << PACK_WIDTH) - 1
        return tuple((packed >> (i * self.field_bits)) & mask for i in range(self.nvars))

    def divides(self, a: int, b: int) -> bool:
        """True iff the monomial packed in a divides the one packed in b."""
        return ((b | self.guard) - a) & self.guard == self.guard


class PolyRing:
    """
    Graded polynomial ring over a coefficient field

    Args:
        field: coefficient field
        variables: distinct variable names, in order
        order: monomial order (default grevlex)
        weights: positive (or zero for auxiliary variables) degree of each variable
    """

    def __init__(self, field: CoefficientField, variables: Sequence[str],
                 order: Optional[MonomialOrder] = None, weights: Optional[Sequence[int]] = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self.order = order or MonomialOrder()
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 0 for w in self.weights):
            raise ValueError(f"bad weights {self.weights}")
        if self.order.split >= self.nvars:
            raise ValueError("elimination block must leave at least one variable")
        self.codec = ExponentCodec(self.nvars)
        self._index = {v: i for i, v in enumerate(variables)}
        self.key_coefficients = self.order.coefficients(self.weights)

    # identity

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.field == other.field and self.variables == other.variables
                and self.weights == other.weights and self.order == other.order)

    def __hash__(self) -> int:
        return hash((self.field, self.variables, self.weights, self.order))

    def __repr__(self) -> str:
        return f"{self.field!r}[{','.join(self.variables)}] ({self.order!r})"

    def compatible(self, other: "PolyRing") -> bool:
        """Same field, variables and grading; orders may differ."""
        return self.field == other.field and self.variables == other.variables and self.weights == other.weights

    def check_compatible(self, other: "PolyRing") -> None:
        if not self.compatible(other):
            raise RingMismatchError(f"ring mismatch: {self!r} vs {other!r}")

    @property
    def positively_graded(self) -> bool:
        return all(w > 0 for w in self.weights)

    @property
    def standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    def declaration(self) -> str:
        """Ring line in the text grammar, e.g. ``ring fp 32003 [x,y,z,w]``."""
        return f"ring {self.field.describe()} [{','.join(self.variables)}]"

    # derived rings

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.field, self.variables, order, self.weights)

    def with_field(self, field: CoefficientField) -> "PolyRing":
        return PolyRing(field, self.variables, self.order, self.weights)

    def with_variables(self, variables: Sequence[str], order: Optional[MonomialOrder] = None,
                       weights: Optional[Sequence[int]] = None) -> "PolyRing":
        return PolyRing(self.field, variables, order or MonomialOrder(), weights)

    # monomials

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name!r} in {self!r}") from None

    def key(self, exp: Exponent) -> int:
        return sum(e * c for e, c in zip(exp, self.key_coefficients))

    def degree_of(self, exp: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def unit_exponent(self, i: int) -> Exponent:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def zero_exponent(self) -> Exponent:
        return (0,) * self.nvars

    def monomials_of_degree(self, m: int) -> List[Exponent]:
        """All exponents of weighted degree m, largest first in the ring order.

        Requires positive weights.
        """
        if not self.positively_graded:
            raise ValueError("graded pieces are infinite with weight-0 variables")
        if m < 0:
            return []
        result: List[Exponent] = []

        def build(i: int, remaining: int, prefix: List[int]) -> None:
            if i == self.nvars - 1:
                if remaining % self.weights[i] == 0:
                    result.append(tuple(prefix + [remaining // self.weights[i]]))
                return
            for e in range(remaining // self.weights[i] + 1):
                build(i + 1, remaining - e * self.weights[i], prefix + [e])

        build(0, m, [])
        result.sort(key=self.key, reverse=True)
        return result

    def count_monomials(self, m: int) -> int:
        """Dimension of the degree-m piece of the ring."""
        if m < 0:
            return 0
        if self.standard_graded:
            return comb(m + self.nvars - 1, self.nvars - 1)
        return len(self.monomials_of_degree(m))

    def monomial_str(self, exp: Exponent) -> str:
        parts = []
        for v, e in zip(self.variables, exp):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    # polynomial constructors

    def zero(self):
        from src.core.polynomial import Polynomial
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        from src.core.polynomial import Polynomial
        return Polynomial(self, {self.zero_exponent(): self.field(c)})

    def gen(self, name_or_index) -> "Polynomial":
        from src.core.polynomial import Polynomial
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, {self.unit_exponent(i): self.field.one()})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp: Exponent, coeff=1):
        from src.core.polynomial import Polynomial
        return Polynomial(self, {tuple(exp): self.field(coeff)})

    def parse(self, text: str):
        from src.core.parser import parse_polynomial
        return parse_polynomial(text, self)

    def random_form(self, degree: int, rng, exclude: Iterable[Exponent] = ()):
        """Random homogeneous form of the given degree with coefficients from rng."""
        from src.core.polynomial import Polynomial
        skip = set(exclude)
        terms = {}
        for exp in self.monomials_of_degree(degree):
            if exp in skip:
                continue
            c = self.field.random_element(rng)
            if c != 0:
                terms[exp] = c
        return Polynomial(self, terms)
