"""
Curve Recipes
Constructions of the three kinds of degree-10 genus-11 space curves:
the semicanonical example given by explicit equations, the ACM curve of
a 5x4 linear matrix, and a curve on a cubic surface obtained by liaison
"""

import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from src.core.field import CoefficientField
from src.core.ideal import Ideal, connectedness_h1, intersect, linked_ideal, quotient, saturate_ideal, singular_locus_smooth
from src.core.matrix import PolyMatrix, maximal_minors
from src.core.parser import parse_matrix_text
from src.core.polynomial import Polynomial
from src.core.ring import PolyRing
from src.lattice.arithmetic import liaison_genus
from src.utils.config import DetqConfig, get_config
from src.utils.errors import LiaisonError, PreconditionError

logger = logging.getLogger(__name__)

VARIABLES = ("x", "y", "z", "w")
KINDS = ("d1", "acm", "d2", "matrix")
EXPECTED_BUNDLE = (2, 10, 11, True, True)

D1_DENOMINATOR = (
    "y*z-x*w",
    "x^2*w^2+z^2*w^2",
    "x^2*y*w+x*z*w^2",
    "x^2*y^2-z^2*w^2",
)
D1_F1 = "x^2*y^2+x^2*y*z+y^3*z-x^3*w-x*y^2*w-z^2*w^2"
D1_F2 = "y*z^3+x^2*y*w-x*z^2*w+x*z*w^2+y*z*w^2-x*w^3"

ACM_MATRIX = (
    ("y", "0", "x+y+z+w", "y+z+w"),
    ("y", "0", "z", "w"),
    ("y+z", "x+y", "0", "y+z+w"),
    ("x", "x+w", "x", "x+z"),
    ("0", "x+y+z", "z+w", "z+w"),
)


@dataclass
class CurveBundle:
    """
    A curve ideal with the invariants every recipe is checked against

    Attributes:
        ideal: saturated ideal of the curve
        codim, degree, genus: from the Hilbert polynomial
        smooth: Jacobian criterion
        connected: h^1(I_C) = 0
        attempts: how many random draws the recipe needed
        linkage: the two quartics a liaison recipe used, as strings
    """
    kind: str
    ideal: Ideal
    codim: int
    degree: int
    genus: int
    smooth: bool
    connected: bool
    attempts: int = 1
    seconds: float = 0.0
    linkage: Optional[List[str]] = None

    @property
    def invariants(self) -> tuple:
        return (self.codim, self.degree, self.genus, self.smooth, self.connected)

    def to_json(self) -> Dict:
        return {
            "kind": self.kind,
            "codim": self.codim,
            "degree": self.degree,
            "genus": self.genus,
            "smooth": self.smooth,
            "connected": self.connected,
            "attempts": self.attempts,
            "linkage": self.linkage,
            "ideal": self.ideal.to_json(),
        }


@dataclass
class CurveRecipe:
    """
    How to build a curve

    Args:
        kind: "d1", "acm", "d2", or "matrix" (Hilbert-Burch from a matrix file)
        matrix_path: the 5x4 matrix file for kind "matrix"
        seed: randomness of the liaison recipe
        field: "fp" or "q"; None takes the configured field
        prime: modulus for "fp"
    """
    kind: str
    matrix_path: Optional[str] = None
    seed: Optional[int] = None
    field: Optional[str] = None
    prime: Optional[int] = None

    def __post_init__(self):
        self.kind = self.kind.strip().lower()
        if self.kind not in KINDS:
            raise ValueError(f"unknown recipe {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.kind == "matrix" and not self.matrix_path:
            raise ValueError("the matrix recipe needs a matrix file")

    def config(self) -> DetqConfig:
        return get_config().override(field=self.field, prime=self.prime, seed=self.seed)

    def ring(self) -> PolyRing:
        return PolyRing(self.config().make_field(), VARIABLES)


def _bundle(kind: str, i: Ideal) -> CurveBundle:
    data = i.hilbert()
    smooth = singular_locus_smooth(i, 2).smooth if data.codim == 2 else False
    connected = data.projective_dim == 1 and connectedness_h1(i) == 0
    return CurveBundle(kind, i, data.codim, data.degree, data.genus, smooth, connected)


def _require(bundle: CurveBundle) -> CurveBundle:
    if bundle.invariants != EXPECTED_BUNDLE:
        names = ("codim", "degree", "genus", "smooth", "connected")
        bad = [f"{n}={v}" for n, v, e in zip(names, bundle.invariants, EXPECTED_BUNDLE) if v != e]
        raise PreconditionError(f"recipe {bundle.kind} gives {', '.join(bad)}; expected {EXPECTED_BUNDLE}")
    return bundle


def explicit_d1(ring: PolyRing) -> Ideal:
    """saturate(<F1, F2> : D^inf) for the explicit semicanonical example."""
    D = Ideal.from_strings(ring, D1_DENOMINATOR, "D")
    ci = Ideal.from_strings(ring, [D1_F1, D1_F2], "F1,F2")
    curve = quotient(ci, D, saturate=True).trim()
    curve.name = "d1"
    return curve


def matrix_curve(m: PolyMatrix, name: str = "acm") -> Ideal:
    """Saturated ideal of the maximal minors of a (c+1) x c matrix."""
    if m.nrows != m.ncols + 1:
        raise PreconditionError(f"Hilbert-Burch needs a (c+1) x c matrix, got {m.nrows}x{m.ncols}")
    curve = saturate_ideal(Ideal(m.ring, maximal_minors(m))).trim()
    curve.name = name
    return curve


def acm_matrix(ring: PolyRing) -> PolyMatrix:
    return PolyMatrix(ring, [[ring.parse(entry) for entry in row] for row in ACM_MATRIX])


def _nonzero(F: CoefficientField, rng) -> object:
    while True:
        c = F.random_element(rng, 50)
        if c != 0:
            return c


def _random_combination(forms: List[Polynomial], rng) -> Polynomial:
    F = forms[0].ring.field
    total = forms[0].ring.zero()
    for f in forms:
        total = total + f.scale(F.random_element(rng, 50))
    return total


def _linked_d2_attempt(ring: PolyRing, rng) -> CurveBundle:
    """
    One draw: a plane quartic C4 in w = 0 through (1:0:0:0) and (0:1:0:0),
    the lines e1, e2 through those points leaving the plane, and two
    random quartics through C4 + e1 + e2
    """
    F = ring.field
    plane = ring.with_variables(VARIABLES[:3])
    quartic = plane.random_form(4, rng, exclude=[(4, 0, 0), (0, 4, 0)])
    c4 = Ideal(ring, [ring.gen("w"), quartic.in_ring(ring)], "C4")
    b1, c1, a2, c2 = (_nonzero(F, rng) for _ in range(4))
    while c2 == c1:
        c2 = _nonzero(F, rng)
    e1 = Ideal(ring, [ring.gen("y") - ring.gen("w").scale(b1), ring.gen("z") - ring.gen("w").scale(c1)], "e1")
    e2 = Ideal(ring, [ring.gen("x") - ring.gen("w").scale(a2), ring.gen("z") - ring.gen("w").scale(c2)], "e2")
    sextic = intersect(intersect(c4, e1), e2)
    data = sextic.hilbert()
    if (data.degree, data.genus) != (6, 3):
        raise LiaisonError(f"C4 + e1 + e2 has (degree, genus) = ({data.degree}, {data.genus})")
    quartics = sextic.graded_piece(4)
    f = _random_combination(quartics, rng)
    g = _random_combination(quartics, rng)
    residual = linked_ideal(sextic, f, g)
    residual.name = "d2"
    bundle = _bundle("d2", residual)
    bundle.linkage = [str(f), str(g)]
    return bundle


def linked_d2(ring: PolyRing, seed: int, retries: int) -> CurveBundle:
    """
    Residual of C4 + e1 + e2 in two general quartics, redrawn until it is a
    smooth connected (10, 11) curve

    Raises:
        PreconditionError: no good draw within ``retries`` attempts
    """
    rng = np.random.default_rng(seed)
    expected_genus = liaison_genus(6, 3, 4, 4, 10)
    for attempt in range(1, retries + 1):
        try:
            bundle = _linked_d2_attempt(ring, rng)
        except LiaisonError as exc:
            logger.warning(f"⚠️ liaison draw {attempt} failed: {exc}")
            continue
        bundle.attempts = attempt
        if bundle.invariants == EXPECTED_BUNDLE and bundle.genus == expected_genus:
            return bundle
        logger.warning(f"⚠️ liaison draw {attempt} gave {bundle.invariants}, retrying")
    raise PreconditionError(f"no smooth connected (10, 11) residual in {retries} draws (seed {seed})")


def build_curve(recipe: CurveRecipe) -> CurveBundle:
    """
    Build the recipe's curve and check (codim, degree, genus, smooth, connected)
    is (2, 10, 11, True, True)

    Raises:
        PreconditionError: the curve has other invariants
    """
    start = time.time()
    config = recipe.config()
    ring = recipe.ring()
    logger.info(f"🔄 Building {recipe.kind} curve over {ring.field.describe()}")
    if recipe.kind == "d1":
        bundle = _bundle("d1", explicit_d1(ring))
    elif recipe.kind == "acm":
        bundle = _bundle("acm", matrix_curve(acm_matrix(ring)))
    elif recipe.kind == "matrix":
        text = Path(recipe.matrix_path).read_text(encoding="utf-8")
        m = parse_matrix_text(text, ring)
        bundle = _bundle("matrix", matrix_curve(m, "matrix"))
    else:
        bundle = linked_d2(ring, config.seed, config.recipe_retries)
    bundle.seconds = time.time() - start
    _require(bundle)
    logger.info(f"✅ {recipe.kind} curve ready in {bundle.seconds:.1f}s: (d, g) = ({bundle.degree}, {bundle.genus})")
    return bundle
