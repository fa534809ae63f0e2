"""
Numerical Identities
Quadrisecant counts, the restriction lattice of a surface in |11H - 3E|,
rational solvability of binary quadratic equations, and small genus and
defect formulas
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import sympy
from sympy.ntheory import factorint, legendre_symbol
from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

from src.lattice.blowup import ANTICANONICAL, CURVE_SPACE, DivisorClass, IteratedBlowup
from src.utils.errors import LatticeError

logger = logging.getLogger(__name__)

SEARCH_BOUND = 24


def quadrisecant_count(d: int, g: int) -> int:
    """Number of 4-secant lines of a space curve: (d-2)(d-3)^2(d-4)/12 - g(d^2 - 7d + 13 - g)/2."""
    if d < 4:
        raise LatticeError("the quadrisecant formula needs degree at least 4")
    value = Fraction((d - 2) * (d - 3) ** 2 * (d - 4), 12) - Fraction(g * (d * d - 7 * d + 13 - g), 2)
    if value.denominator != 1:
        raise LatticeError(f"non-integral quadrisecant count {value} for (d, g) = ({d}, {g})")
    return int(value)


def defect(sing_count: int, h0_cubics: int) -> int:
    """|Sing| + h^0(P^4, I(3)) - 35."""
    if sing_count < 0 or h0_cubics < 0:
        raise ValueError("counts must be nonnegative")
    return sing_count + h0_cubics - 35


def riemann_hurwitz(sheets: int, g_base: int, ramification: int) -> int:
    """Genus g of a cover with 2g - 2 = sheets (2 g_base - 2) + ramification."""
    if min(sheets, g_base, ramification) < 0 or sheets == 0:
        raise ValueError("Riemann-Hurwitz data must be nonnegative with at least one sheet")
    twice = sheets * (2 * g_base - 2) + ramification
    if twice % 2:
        raise LatticeError(f"2g - 2 = {twice} is odd")
    return twice // 2 + 1


def liaison_genus(d: int, g: int, s: int, t: int, d_residual: int) -> int:
    """Genus of the residual curve from g - g' = (s + t - 4)(d - d')/2."""
    twice = (s + t - 4) * (d - d_residual)
    if twice % 2:
        raise LatticeError("the liaison genus difference is not an integer")
    return g - twice // 2


def k3_adjunction_genus(self_intersection: int) -> int:
    """1 + C^2/2 for a curve on a K3 surface."""
    if self_intersection % 2:
        raise LatticeError("curves on a K3 surface have even self-intersection")
    return 1 + self_intersection // 2


# restriction to a smooth F in |11H - 3E|, the plane blown up at 30 points

FLOP_SURFACE = DivisorClass(11, 3)
N_SECANT_POINTS = 20
N_CURVE_POINTS = 10


@dataclass(frozen=True)
class SurfaceLatticeClass:
    """
    a*l - b*s - c*e on F, with s and e the sums of the 20 and 10 exceptional curves

    Only classes symmetric in each group occur, so three numbers suffice.
    """
    l: int
    s: int
    e: int

    def vector(self) -> np.ndarray:
        return np.array([self.l] + [-self.s] * N_SECANT_POINTS + [-self.e] * N_CURVE_POINTS, dtype=np.int64)

    def __str__(self) -> str:
        return f"{self.l}l - {self.s}s - {self.e}e"


SURFACE_FORM = np.diag([1] + [-1] * (N_SECANT_POINTS + N_CURVE_POINTS)).astype(np.int64)
H_RESTRICTED = SurfaceLatticeClass(11, 1, 3)
H_RESTRICTED_VARIANT = SurfaceLatticeClass(11, 3, 1)
E_RESTRICTED = SurfaceLatticeClass(40, 4, 11)
K_SURFACE = SurfaceLatticeClass(-3, -1, -1)


def surface_product(a: SurfaceLatticeClass, b: SurfaceLatticeClass) -> int:
    return int(a.vector() @ SURFACE_FORM @ b.vector())


def k3_restriction(D: DivisorClass, h_image: SurfaceLatticeClass = H_RESTRICTED) -> SurfaceLatticeClass:
    """Restriction of nH - kE to F."""
    return SurfaceLatticeClass(D.n * h_image.l - D.k * E_RESTRICTED.l,
                               D.n * h_image.s - D.k * E_RESTRICTED.s,
                               D.n * h_image.e - D.k * E_RESTRICTED.e)


@dataclass
class RestrictionReport:
    pairs: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    consistent: bool = True
    h_image: str = ""
    genus: Dict[str, int] = field(default_factory=dict)
    genus_discrepancy: bool = False

    def to_json(self) -> Dict:
        return {
            "h_image": self.h_image,
            "consistent": self.consistent,
            "pairs": {k: list(v) for k, v in self.pairs.items()},
            "genus": dict(self.genus),
            "genus_discrepancy": self.genus_discrepancy,
        }


def restriction_report(h_image: SurfaceLatticeClass = H_RESTRICTED,
                       space: Optional[IteratedBlowup] = None) -> RestrictionReport:
    """
    Compare (D|F).(D'|F) with D.D'.F for D, D' among H, E, -K, 7H - 2E,
    and the genus of the curve E|F computed three ways
    """
    space = space or CURVE_SPACE
    names = {"H": DivisorClass(1, 0), "E": DivisorClass(0, -1), "-K": ANTICANONICAL, "7H-2E": DivisorClass(7, 2)}
    report = RestrictionReport(h_image=str(h_image))
    keys = list(names)
    for i, a in enumerate(keys):
        for b in keys[i:]:
            on_surface = surface_product(k3_restriction(names[a], h_image), k3_restriction(names[b], h_image))
            ambient = space.triple(names[a], names[b], FLOP_SURFACE)
            report.pairs[f"{a}.{b}"] = (on_surface, ambient)
            if on_surface != ambient:
                report.consistent = False
    square = surface_product(E_RESTRICTED, E_RESTRICTED)
    canonical_degree = surface_product(K_SURFACE, E_RESTRICTED)
    report.genus = {
        "k3_adjunction": k3_adjunction_genus(square),
        "surface_adjunction": 1 + (square + canonical_degree) // 2,
        "riemann_hurwitz": riemann_hurwitz(3, 11, 80),
    }
    report.genus_discrepancy = report.genus["k3_adjunction"] != report.genus["riemann_hurwitz"]
    if not report.consistent:
        logger.warning(f"⚠️ restriction {h_image} disagrees with the ambient triple products")
    return report


# binary quadratic equations over Q


@dataclass(frozen=True)
class QuadForm:
    """A*a^2 + B*a*b + C*b^2 = target with integer coefficients."""
    A: int
    B: int
    C: int
    target: int = 0

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def evaluate(self, a, b):
        return self.A * a * a + self.B * a * b + self.C * b * b

    def __str__(self) -> str:
        return f"{self.A}a^2 + {self.B}ab + {self.C}b^2 = {self.target}"


@dataclass
class ExclusionResult:
    """
    Attributes:
        solvable: True, False, or None when undecided
        witness: a rational solution (a, b) when one was found
        obstruction: primes (or "inf") with Hilbert symbol -1, or the reason
    """
    form: QuadForm
    solvable: Optional[bool]
    witness: Optional[Tuple[Fraction, Fraction]] = None
    obstruction: List[Union[int, str]] = field(default_factory=list)
    reason: str = ""

    @property
    def verdict(self) -> str:
        if self.solvable is None:
            return "inconclusive"
        return "solvable" if self.solvable else "unsolvable"

    def to_json(self) -> Dict:
        return {
            "form": str(self.form),
            "verdict": self.verdict,
            "witness": [str(x) for x in self.witness] if self.witness else None,
            "obstruction": [str(p) for p in self.obstruction],
            "reason": self.reason,
        }


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _split(n: int, p: int) -> Tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a: int, b: int, p: Union[int, str]) -> int:
    """Hilbert symbol (a, b)_p of nonzero integers at a prime p or at "inf"."""
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        def eps(x: int) -> int:
            return ((x - 1) // 2) % 2

        def omega(x: int) -> int:
            return ((x * x - 1) // 8) % 2

        exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u % p, p) ** beta * legendre_symbol(v % p, p) ** alpha


def _square_free(n: int) -> int:
    sign = -1 if n < 0 else 1
    core = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            core *= p
    return sign * core


def _search(form: QuadForm, bound: int) -> Optional[Tuple[Fraction, Fraction]]:
    for den in range(1, bound + 1):
        for a_num in range(-bound, bound + 1):
            for b_num in range(-bound, bound + 1):
                if gcd(gcd(a_num, b_num), den) != 1:
                    continue
                a, b = Fraction(a_num, den), Fraction(b_num, den)
                if form.evaluate(a, b) == form.target and (form.target or a or b):
                    return a, b
    return None


def _ternary_witness(form: QuadForm, disc: int, norm: int) -> Optional[Tuple[Fraction, Fraction]]:
    """Solve X^2 - disc*Y^2 = norm*Z^2 and undo the completion of the square."""
    x, y, z = sympy.symbols("x y z", integer=True)
    try:
        sol = diop_ternary_quadratic(x ** 2 - disc * y ** 2 - norm * z ** 2)
    except (NotImplementedError, ValueError, TypeError):
        return None
    if not sol or sol[0] is None or sol[2] == 0:
        return None
    X, Y, Z = (int(t) for t in sol)
    b = Fraction(Y, Z)
    a = (Fraction(X, Z) - form.B * b) / (2 * form.A)
    return (a, b) if form.evaluate(a, b) == form.target else None


def rational_exclusion(form: QuadForm, search_bound: int = SEARCH_BOUND) -> ExclusionResult:
    """
    Decide whether A a^2 + B ab + C b^2 = target has a rational solution

    Target 0: a nontrivial zero exists iff the discriminant is a square.
    Otherwise, with A != 0, 4A(form) = X^2 - D Y^2 for X = 2Aa + Bb, Y = b,
    and X^2 - D Y^2 = 4A t is solvable iff the Hilbert symbols (D, 4At)_p
    are all 1 (Hasse-Minkowski).
    """
    A, B, C, t = form.A, form.B, form.C, form.target
    disc = form.discriminant
    if t == 0:
        if _is_square(disc):
            r = isqrt(disc)
            witness = (Fraction(-B + r, 2 * A), Fraction(1)) if A else (Fraction(1), Fraction(0))
            return ExclusionResult(form, True, witness, reason=f"discriminant {disc} is a square")
        return ExclusionResult(form, False, obstruction=["discriminant"],
                               reason=f"only (0, 0): discriminant {disc} is not a square")
    if A == 0 and C == 0:
        if B == 0:
            return ExclusionResult(form, False, reason="the zero form only takes the value 0")
        return ExclusionResult(form, True, (Fraction(t, B), Fraction(1)), reason="a*b represents every value")
    if A == 0:
        form = QuadForm(C, B, A, t)
        swapped = rational_exclusion(form, search_bound)
        if swapped.witness:
            swapped.witness = (swapped.witness[1], swapped.witness[0])
        swapped.form = QuadForm(A, B, C, t)
        return swapped
    if disc == 0:
        # A(a + Bb/2A)^2 = t
        ratio = Fraction(t, A)
        if _is_square(ratio.numerator * ratio.denominator):
            root = Fraction(isqrt(ratio.numerator * ratio.denominator), ratio.denominator)
            return ExclusionResult(form, True, (root, Fraction(0)), reason="degenerate form, t/A is a square")
        return ExclusionResult(form, False, obstruction=["square class"], reason=f"{ratio} is not a rational square")
    norm = 4 * A * t
    if _is_square(disc):
        # (X - rY)(X + rY) = norm with X - rY = 1
        r = isqrt(disc)
        b = Fraction(norm - 1, 2 * r)
        witness = ((Fraction(norm + 1, 2) - B * b) / (2 * A), b)
        return ExclusionResult(form, True, witness, reason="isotropic form represents every value")
    d0, n0 = _square_free(disc), _square_free(norm)
    places: List[Union[int, str]] = ["inf"] + sorted(set(factorint(abs(2 * d0 * n0))))
    bad = [p for p in places if hilbert_symbol(d0, n0, p) == -1]
    if bad:
        return ExclusionResult(form, False, obstruction=bad, reason="local obstruction")
    witness = _ternary_witness(form, disc, norm) or _search(form, search_bound)
    if witness is None:
        logger.warning(f"⚠️ {form} is locally solvable everywhere but no witness was found")
        return ExclusionResult(form, None, reason="locally solvable, witness search inconclusive")
    return ExclusionResult(form, True, witness, reason="witness found")
