"""
Blow-up Intersection Theory
Integer intersection numbers on the blow-up of P^3 along a curve and on its
further blow-ups along disjoint curves, Euler characteristics of divisor
classes and the flop pushforward
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from src.core.hilbert import HilbertData
from src.utils.errors import LatticeError

_CLASS_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(H|E)\b")


@dataclass(frozen=True)
class DivisorClass:
    """
    The class nH - kE

    Attributes:
        n: coefficient of H
        k: coefficient of -E
    """
    n: int
    k: int

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Read classes written like ``11H-3E``, ``-K``, ``H`` or ``E``."""
        compact = text.replace(" ", "")
        if compact in ("-K", "-K_X"):
            return ANTICANONICAL
        if compact in ("K", "K_X"):
            return -ANTICANONICAL
        if not compact or _CLASS_TERM.sub("", compact):
            raise LatticeError(f"cannot read a divisor class from {text!r}")
        n = k = 0
        for sign, coeff, symbol in _CLASS_TERM.findall(compact):
            value = int(coeff) if coeff else 1
            value = -value if sign == "-" else value
            if symbol == "H":
                n += value
            else:
                k -= value
        return cls(n, k)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.n + other.n, self.k + other.k)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.n - other.n, self.k - other.k)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.n, -self.k)

    def __mul__(self, c: int) -> "DivisorClass":
        return DivisorClass(c * self.n, c * self.k)

    __rmul__ = __mul__

    @property
    def slope(self) -> Fraction:
        if self.n == 0:
            raise LatticeError(f"slope of {self} is undefined")
        return Fraction(self.k, self.n)

    def vector(self) -> Tuple[int, int]:
        """Coordinates on the basis (H, E)."""
        return (self.n, -self.k)

    def is_proportional(self, other: "DivisorClass") -> bool:
        """Positive multiples of each other."""
        return self.n * other.k == self.k * other.n and self.n * other.n + self.k * other.k > 0

    def __str__(self) -> str:
        def term(c: int, symbol: str) -> str:
            return {1: symbol, -1: f"-{symbol}"}.get(c, f"{c}{symbol}")

        parts = [term(c, s) for c, s in ((self.n, "H"), (-self.k, "E")) if c]
        if not parts:
            return "0"
        return parts[0] + "".join(p if p.startswith("-") else f"+{p}" for p in parts[1:])


H = DivisorClass(1, 0)
E = DivisorClass(0, -1)
ANTICANONICAL = DivisorClass(4, 1)


@dataclass(frozen=True)
class Center:
    """
    A further blow-up center: a smooth rational curve disjoint from the others

    Attributes:
        name: label of the exceptional divisor
        degree: H . gamma
        secancy: E . gamma
        normal_degree: degree of the normal bundle of gamma
    """
    name: str
    degree: int
    secancy: int
    normal_degree: int


@dataclass
class IteratedBlowup:
    """
    Blow-up X of P^3 along a curve of degree d and genus g, followed by
    blow-ups along disjoint curves gamma_i

    Intersection numbers come from a symmetric integer tensor on the basis
    (H, E, E_1, ..., E_m):
    H^3 = 1, H^2 E = 0, H E^2 = -d, E^3 = 2 - 2g - 4d;
    E_i . D . D' = 0 for pulled-back D, D'; E_i^2 . D = -(D . gamma_i);
    E_i^3 = -deg N_{gamma_i}; products of distinct E_i vanish.
    """
    d: int
    g: int
    centers: List[Center] = field(default_factory=list)

    def __post_init__(self):
        self._tensor = self._build_tensor()

    @property
    def rank(self) -> int:
        return 2 + len(self.centers)

    def blow_up(self, center: Center) -> "IteratedBlowup":
        return IteratedBlowup(self.d, self.g, self.centers + [center])

    def _build_tensor(self) -> np.ndarray:
        r = self.rank
        t = np.zeros((r, r, r), dtype=np.int64)
        base = {(0, 0, 0): 1, (0, 0, 1): 0, (0, 1, 1): -self.d, (1, 1, 1): 2 - 2 * self.g - 4 * self.d}
        for idx, value in base.items():
            for perm in set(_permutations(idx)):
                t[perm] = value
        for c, center in enumerate(self.centers, start=2):
            for b, pairing in ((0, center.degree), (1, center.secancy)):
                for perm in set(_permutations((c, c, b))):
                    t[perm] = -pairing
            t[c, c, c] = -center.normal_degree
        return t

    def exceptional(self, name: str) -> "LatticeClass":
        for c, center in enumerate(self.centers, start=2):
            if center.name == name:
                coords = [0] * self.rank
                coords[c] = 1
                return LatticeClass(tuple(coords))
        raise LatticeError(f"no exceptional divisor named {name!r}")

    def lift(self, D: DivisorClass) -> "LatticeClass":
        return LatticeClass(D.vector() + (0,) * len(self.centers))

    def coordinates(self, D: Union[DivisorClass, "LatticeClass"]) -> np.ndarray:
        lifted = self.lift(D) if isinstance(D, DivisorClass) else D
        if len(lifted.coords) != self.rank:
            raise LatticeError(f"class {lifted} does not live on a space of Picard rank {self.rank}")
        return np.array(lifted.coords, dtype=np.int64)

    def triple(self, a, b, c) -> int:
        """Trilinear intersection number a . b . c."""
        u, v, w = (self.coordinates(x) for x in (a, b, c))
        return int(np.einsum("i,j,k,ijk->", u, v, w, self._tensor))

    def canonical(self) -> "LatticeClass":
        """K = -4H + E + sum_i E_i."""
        return LatticeClass((-4, 1) + (1,) * len(self.centers))


def _permutations(idx: Tuple[int, int, int]) -> List[Tuple[int, int, int]]:
    a, b, c = idx
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


@dataclass(frozen=True)
class LatticeClass:
    """A class given by its coordinates on (H, E, E_1, ..., E_m)."""
    coords: Tuple[int, ...]

    def __add__(self, other: "LatticeClass") -> "LatticeClass":
        return LatticeClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeClass":
        return LatticeClass(tuple(-a for a in self.coords))

    def __mul__(self, c: int) -> "LatticeClass":
        return LatticeClass(tuple(c * a for a in self.coords))

    __rmul__ = __mul__


class BlowupP3(IteratedBlowup):
    """Bl_C P^3 for a curve of degree d and genus g, with no further centers."""


def triple(x: IteratedBlowup, d1, d2, d3) -> int:
    return x.triple(d1, d2, d3)


CURVE_SPACE = BlowupP3(10, 11)


# Euler characteristics


def chi_closed(n: int, k: int, space: Optional[IteratedBlowup] = None) -> int:
    """chi(X, nH - kE) = C(n+3, 3) - 5k(nk + n - 2k^2 - k + 1) on the blow-up along a (10, 11) curve."""
    space = space or CURVE_SPACE
    if (space.d, space.g, space.rank) != (10, 11, 2):
        raise LatticeError("the closed Euler characteristic is stated for the blow-up along a (10, 11) curve")
    ambient = (n + 3) * (n + 2) * (n + 1) // 6
    return ambient - 5 * k * (n * k + n - 2 * k * k - k + 1)


def _rr_without_c2(space: IteratedBlowup, D: DivisorClass) -> Fraction:
    K = -ANTICANONICAL
    return (Fraction(space.triple(D, D, D), 6) - Fraction(space.triple(K, D, D), 4)
            + Fraction(space.triple(D, K, K), 12) + 1)


@dataclass
class RiemannRoch:
    """
    chi(D) = D^3/6 - K.D^2/4 + D.(K^2 + c_2)/12 + 1 with the two periods
    c_2 . H and c_2 . E fitted from two known values and then frozen
    """
    space: IteratedBlowup
    c2_h: Fraction
    c2_e: Fraction

    @classmethod
    def fit(cls, space: Optional[IteratedBlowup] = None,
            anchors: Optional[Dict[Tuple[int, int], int]] = None) -> "RiemannRoch":
        space = space or CURVE_SPACE
        anchors = anchors or {(1, 0): chi_closed(1, 0, space), (0, 1): chi_closed(0, 1, space)}
        c2_h = 12 * (anchors[(1, 0)] - _rr_without_c2(space, H))
        # (0, 1) is the class -E, whose c_2 period is -c_2 . E
        c2_e = -12 * (anchors[(0, 1)] - _rr_without_c2(space, -E))
        return cls(space, c2_h, c2_e)

    def chi(self, n: int, k: int) -> int:
        D = DivisorClass(n, k)
        value = _rr_without_c2(self.space, D) + Fraction(n * self.c2_h - k * self.c2_e, 12)
        if value.denominator != 1:
            raise LatticeError(f"Riemann-Roch gives the non-integer {value} for {D}")
        return int(value)


def chi_hrr(n: int, k: int, space: Optional[IteratedBlowup] = None) -> int:
    return RiemannRoch.fit(space).chi(n, k)


# flop and curve pairings

FLOP_MATRIX = np.array([[11, -40], [3, -11]], dtype=np.int64)


def flop_pushforward(D: DivisorClass) -> DivisorClass:
    """Sends H+ to 11H - 3E and E+ to 40H - 11E; an involution fixing -K."""
    n, k = FLOP_MATRIX.dot(np.array([D.n, D.k], dtype=np.int64))
    return DivisorClass(int(n), int(k))


def curve_pairing(D: DivisorClass, degree: int, secancy: int) -> int:
    """D . gamma for a curve with H . gamma = degree and E . gamma = secancy."""
    return D.n * degree - D.k * secancy


def splitting_criterion(F: DivisorClass, secancy: int) -> int:
    """(2F + K) . l for a line l with E . l = secancy."""
    return curve_pairing(2 * F - ANTICANONICAL, 1, secancy)


def contracted_residual_numbers(d: int) -> Tuple[int, int]:
    """
    (H . gamma', E . gamma') for the residual curve gamma' = 6 - d, 4(5 - d)

    Raises:
        LatticeError: a negative number, which happens exactly for d > 5
    """
    h, e = 6 - d, 4 * (5 - d)
    if h < 0 or e < 0:
        raise LatticeError(f"residual curve numbers ({h}, {e}) are negative for d = {d}")
    return h, e


def secant_line_blowup(secancy: int, normal_degree: int = -3, name: str = "E_l") -> IteratedBlowup:
    """Bl_C P^3 for a (10, 11) curve, then blown up along one secancy-secant line."""
    return CURVE_SPACE.blow_up(Center(name, 1, secancy, normal_degree))


def recorded_identities(space: Optional[IteratedBlowup] = None) -> Dict[str, Tuple[int, int]]:
    """Named intersection identities: name -> (computed, expected)."""
    x = space or CURVE_SPACE
    K = ANTICANONICAL
    D = DivisorClass.parse
    eleven = D("11H-3E")
    return {
        "(-K)^3": (x.triple(K, K, K), 4),
        "(-K)^2.E": (x.triple(K, K, E), 20),
        "(-K).E^2": (x.triple(K, E, E), 20),
        "H.(-K)^2": (x.triple(H, K, K), 6),
        "(4H-E)^2.(8H-2E)": (x.triple(K, K, D("8H-2E")), 8),
        "(4H-E).(3H-E).H": (x.triple(K, D("3H-E"), H), 2),
        "(11H-3E)^2.H": (x.triple(eleven, eleven, H), 31),
        "(11H-3E)^2.E": (x.triple(eleven, eleven, E), 120),
    }


# numeric anchors of the flip construction
K_T_DOT_T = -1
LINE_EXCEPTIONAL_CUBE = 3
CONTRACTED_PLANE_NORMAL_DEGREE = -2
QUARTIC_RESOLUTION_SHAPE = ((-4, 3), (-3, 4))
FIVE_SECANT_NORMAL_DEGREE = -3  # O(-1) + O(-2)
DIRECTRIX_NORMAL_DEGREE = -1


def adjunction_canonical_degree(self_intersection: int, normal_degree: int, genus: int = 0) -> int:
    """K . t for a curve t on a divisor S with t^2 = self_intersection on S and S . t = normal_degree."""
    return 2 * genus - 2 - self_intersection - normal_degree


def resolution_degree(shape: Tuple[Tuple[int, int], Tuple[int, int]], nvars: int = 5) -> Tuple[int, int]:
    """
    (codimension, degree) of the scheme whose ideal sheaf is resolved by
    0 -> O(a)^r -> O(b)^s -> I -> 0, with shape ((a, r), (b, s))
    """
    (syz, r), (gen, s) = shape
    numerator = [0] * (1 - syz)
    numerator[0] = 1
    numerator[-gen] -= s
    numerator[-syz] += r
    data = HilbertData(nvars, tuple(numerator))
    return data.codim, data.degree


def flip_anchor_identities() -> Dict[str, Tuple[object, object]]:
    """Anchors of the inverse flip along a 5-secant line: name -> (computed, expected)."""
    x1 = secant_line_blowup(5, FIVE_SECANT_NORMAL_DEGREE)
    el = x1.exceptional("E_l")
    return {
        "E_l^3": (x1.triple(el, el, el), LINE_EXCEPTIONAL_CUBE),
        # t is a ruling of E_y = P^1 x P^1 over the directrix
        "K_T.t": (adjunction_canonical_degree(0, DIRECTRIX_NORMAL_DEGREE), K_T_DOT_T),
        "K.line on the contracted plane": (adjunction_canonical_degree(1, CONTRACTED_PLANE_NORMAL_DEGREE), -1),
        "codim, degree of the sextic surface": (resolution_degree(QUARTIC_RESOLUTION_SHAPE), (2, 6)),
    }
