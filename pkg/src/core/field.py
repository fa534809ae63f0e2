"""
Coefficient Fields
Exact arithmetic over the rationals or a prime field
"""

from fractions import Fraction
from typing import Any, Union

import sympy

from src.utils.errors import ParseError

Scalar = Union[int, Fraction]


class CoefficientField:
    """
    Exact coefficient field: QQ or GF(p)

    Prime-field elements are plain ints in [0, p); rational elements are
    normalized Fractions (gcd-reduced, positive denominator).

    Args:
        kind: "q" for the rationals, "fp" for a prime field
        modulus: the prime p (prime fields only)
    """

    def __init__(self, kind: str, modulus: int = 0):
        if kind not in ("q", "fp"):
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == "fp":
            if not sympy.isprime(modulus):
                raise ValueError(f"modulus {modulus} is not prime")
        else:
            modulus = 0
        self.kind = kind
        self.modulus = int(modulus)

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls("q")

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientField":
        return cls("fp", p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "fp"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, CoefficientField) and (self.kind, self.modulus) == (other.kind, other.modulus)

    def __hash__(self) -> int:
        return hash((self.kind, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.modulus})" if self.is_prime_field else "QQ"

    def describe(self) -> str:
        """Token used in ring declarations and cache keys."""
        return f"fp {self.modulus}" if self.is_prime_field else "q"

    # arithmetic

    def zero(self) -> Scalar:
        return 0 if self.is_prime_field else Fraction(0)

    def one(self) -> Scalar:
        return 1 if self.is_prime_field else Fraction(1)

    def __call__(self, value: Any) -> Scalar:
        """Coerce an int, Fraction or sympy Rational into the field."""
        if isinstance(value, sympy.Rational):
            value = Fraction(int(value.p), int(value.q))
        if self.is_prime_field:
            if isinstance(value, Fraction):
                den = value.denominator % self.modulus
                if den == 0:
                    raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {self.modulus}")
                return value.numerator * pow(den, -1, self.modulus) % self.modulus
            return int(value) % self.modulus
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.modulus if self.modulus else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.modulus if self.modulus else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.modulus if self.modulus else a * b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.modulus if self.modulus else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus:
            return pow(a, -1, self.modulus)
        return 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def random_element(self, rng, bound: int = 0) -> Scalar:
        """Uniform element of GF(p), or an integer in [-bound, bound] over QQ."""
        if self.is_prime_field:
            return int(rng.integers(0, self.modulus))
        bound = bound or 100
        return Fraction(int(rng.integers(-bound, bound + 1)))

    def to_str(self, a: Scalar) -> str:
        """Printable form; prime-field elements are shown balanced around zero."""
        if self.is_prime_field:
            return str(a - self.modulus if a > self.modulus // 2 else a)
        return str(a)

    def parse_scalar(self, text: str) -> Scalar:
        try:
            return self(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {text!r}: {exc}") from exc
