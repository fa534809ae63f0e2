"""
Stable Base Locus Chambers
Chamber decompositions of the effective cone of the blow-up along a (10, 11)
curve, for the generic, semicanonical (D1) and cubic-surface (D2) cases
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from src.lattice.blowup import DivisorClass
from src.utils.errors import LatticeError

CASES = ("generic", "d1", "d2")
CASE_ALIASES = {"acm": "generic", "generic-acm": "generic", "d1-semicanonical": "d1", "d2-on-cubic": "d2"}

P = DivisorClass.parse


def position(D: DivisorClass) -> Optional[Fraction]:
    """
    Place of D along the effective cone, increasing from E towards the far boundary

    E itself sits at None, below every slope; classes with n > 0 sit at k/n.

    Raises:
        LatticeError: D is not a nonzero class with n > 0 or a multiple of E
    """
    if D.n == 0 and D.k < 0:
        return None
    if D.n <= 0:
        raise LatticeError(f"{D} is not effective")
    return Fraction(D.k, D.n)


def _before(a: Optional[Fraction], b: Optional[Fraction]) -> bool:
    if a is None:
        return b is not None
    return b is not None and a < b


@dataclass(frozen=True)
class Chamber:
    """
    Region between two rays; ``low`` is the ray nearer to E

    Attributes:
        low, high: boundary rays
        low_closed, high_closed: whether each ray belongs to the chamber
        base_locus: stable base locus on the chamber's interior
        model: the model X(D) for D in the interior
        ray_models: models at boundary rays that differ from the interior
    """
    low: DivisorClass
    high: DivisorClass
    low_closed: bool
    high_closed: bool
    base_locus: str
    model: str
    ray_models: Tuple[Tuple[DivisorClass, str], ...] = ()

    def label(self) -> str:
        """Interval in the usual far-ray-first notation, e.g. ``[11H-3E, 4H-E)``."""
        left = "[" if self.high_closed else "("
        right = "]" if self.low_closed else ")"
        return f"{left}{self.high}, {self.low}{right}"

    def contains(self, D: DivisorClass) -> bool:
        p, lo, hi = position(D), position(self.low), position(self.high)
        above_low = _before(lo, p) or (self.low_closed and p == lo)
        below_high = _before(p, hi) or (self.high_closed and p == hi)
        return above_low and below_high

    def model_of(self, D: DivisorClass) -> str:
        for ray, model in self.ray_models:
            if position(ray) == position(D):
                return model
        return self.model

    def to_json(self) -> Dict:
        return {
            "interval": self.label(),
            "base_locus": self.base_locus,
            "model": self.model,
            "ray_models": {str(r): m for r, m in self.ray_models},
        }


@dataclass
class ChamberTable:
    case: str
    chambers: List[Chamber] = field(default_factory=list)

    @property
    def effective_cone(self) -> Tuple[DivisorClass, DivisorClass]:
        return self.chambers[0].low, self.chambers[-1].high

    def to_json(self) -> Dict:
        return {"case": self.case, "chambers": [c.to_json() for c in self.chambers]}


@dataclass(frozen=True)
class ChamberRecord:
    case: str
    divisor: DivisorClass
    chamber: Chamber
    base_locus: str
    model: str

    def to_json(self) -> Dict:
        return {"case": self.case, "divisor": str(self.divisor), "chamber": self.chamber.label(),
                "base_locus": self.base_locus, "model": self.model}


def normalize_case(case: str) -> str:
    key = case.strip().lower()
    key = CASE_ALIASES.get(key, key)
    if key not in CASES:
        raise LatticeError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    return key


def _generic_like(case: str) -> ChamberTable:
    H, E, K = P("H"), P("E"), P("4H-E")
    F, J = P("11H-3E"), P("40H-11E")
    semicanonical = case == "d1"
    anticanonical_model = ("Y, a 2:1 cover of a quadric Y0 in P^4 contracting L" if semicanonical
                           else "Y in P^4, small contraction of L")
    flopped = "X+ = X, the flop is a Galois involution" if semicanonical else "X+, the flop of X along L"
    return ChamberTable(case, [
        Chamber(E, H, True, False, "E", "P^3", ((E, "point"),)),
        Chamber(H, K, True, True, "empty", "X", ((H, "P^3"), (K, anticanonical_model))),
        Chamber(K, F, False, True, "L, the twenty 4-secant lines", flopped, ((F, "P^3"),)),
        Chamber(F, J, False, True, "J, the support of 40H-11E", "P^3", ((J, "point"),)),
    ])


def _cubic_surface() -> ChamberTable:
    H, E = P("H"), P("E")
    Q, K, S = P("5H-E"), P("4H-E"), P("3H-E")
    return ChamberTable("d2", [
        Chamber(E, H, True, False, "E", "P^3", ((E, "point"),)),
        Chamber(H, Q, True, True, "empty", "X", ((H, "P^3"), (Q, "Y in P^15, small contraction of e1 + e2"))),
        Chamber(Q, K, False, True, "e1 + e2, the 5-secant lines", "X+, inverse flip along e1 + e2",
                ((K, "Y0 in P^4, Q-factorial quartic with an elliptic singularity and 10 nodes"),)),
        Chamber(K, S, False, True, "S, the cubic surface", "not movable, S is a fixed component",
                ((S, "point"),)),
    ])


def chambers(case: str) -> ChamberTable:
    key = normalize_case(case)
    return _cubic_surface() if key == "d2" else _generic_like(key)


def classify(case: str, D: DivisorClass) -> ChamberRecord:
    """
    Chamber, stable base locus and model of an effective class

    Raises:
        LatticeError: D lies outside the effective cone
    """
    table = chambers(case)
    for chamber in table.chambers:
        if chamber.contains(D):
            return ChamberRecord(table.case, D, chamber, chamber.base_locus, chamber.model_of(D))
    low, high = table.effective_cone
    raise LatticeError(f"{D} lies outside the effective cone [{high}, {low}] of case {table.case}")


CONES: Dict[str, Dict[str, Tuple[str, str]]] = {
    "generic": {"nef": ("4H-E", "H"), "movable": ("11H-3E", "H"), "effective": ("40H-11E", "E")},
    "d1": {"nef": ("4H-E", "H"), "movable": ("11H-3E", "H"), "effective": ("40H-11E", "E")},
    "d2": {"nef": ("5H-E", "H"), "movable": ("4H-E", "H"), "effective": ("3H-E", "E")},
}


def cones(case: str) -> Dict[str, Tuple[DivisorClass, DivisorClass]]:
    """Nef, movable and effective cones as (far ray, near ray) pairs."""
    key = normalize_case(case)
    return {name: (P(a), P(b)) for name, (a, b) in CONES[key].items()}
