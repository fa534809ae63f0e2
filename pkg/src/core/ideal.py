"""
Homogeneous Ideals
Cached Groebner bases and the ideal toolbox: membership, intersections,
quotients, saturation, elimination, Hilbert data, smoothness and liaison
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from src.core.groebner import Budget, GroebnerBasis, check_homogeneous, groebner as _groebner
from src.core.hilbert import HilbertData
from src.core.linalg import independent_rows
from src.core.matrix import jacobian_matrix
from src.core.polynomial import Polynomial
from src.core.ring import Exponent, MonomialOrder, PolyRing
from src.utils.cache import BasisCache
from src.utils.config import get_config
from src.utils.errors import LiaisonError, PreconditionError

logger = logging.getLogger(__name__)

GREVLEX = MonomialOrder("grevlex")
AUX_VARIABLE = "aux_t"
BAYER_ATTEMPTS = 6


class Ideal:
    """
    Homogeneous ideal with per-order cached reduced Groebner bases

    The cache behaves as if absent: results never depend on hits.

    Args:
        ring: ambient ring
        generators: homogeneous generators (zeros are dropped)
        name: optional label used in logs and reports
    """

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial], name: str = ""):
        gens = [g.in_ring(ring) for g in generators if not g.is_zero()]
        check_homogeneous(gens)
        self.ring = ring
        self.gens = gens
        self.name = name
        self._bases: Dict[MonomialOrder, GroebnerBasis] = {}
        self._hilbert: Optional[HilbertData] = None
        self.derived: Dict[str, object] = {}
        self._lock = threading.RLock()

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()], "unit")

    @classmethod
    def irrelevant(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens(), "irrelevant")

    @classmethod
    def from_strings(cls, ring: PolyRing, generators: Sequence[str], name: str = "") -> "Ideal":
        return cls(ring, [ring.parse(g) for g in generators], name)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"Ideal({label}{len(self.gens)} generators in {self.ring!r})"

    def to_json(self) -> Dict:
        from src.core.parser import ideal_to_json
        return ideal_to_json(self.ring, self.gens)

    # Groebner bases and membership

    def groebner(self, order: Optional[MonomialOrder] = None, budget: Optional[Budget] = None) -> GroebnerBasis:
        """Reduced Groebner basis for ``order`` (default: the ring's order)."""
        order = order or self.ring.order
        with self._lock:
            basis = self._bases.get(order)
            if basis is not None:
                return basis
            ring = self.ring.with_order(order)
            if not self.gens:
                basis = GroebnerBasis(ring, [])
            else:
                cache = BasisCache()
                cached = cache.load(ring, order, self.gens)
                if cached is not None:
                    basis = GroebnerBasis(ring, cached)
                else:
                    basis = _groebner(self.gens, order, budget)
                    cache.store(ring, order, self.gens, basis.polys)
            self._bases[order] = basis
            return basis

    @property
    def is_unit(self) -> bool:
        return self.groebner(GREVLEX).is_unit

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def normal_form(self, poly: Polynomial) -> Polynomial:
        return self.groebner(GREVLEX).normal_form(poly)

    def contains(self, poly: Polynomial) -> bool:
        return poly.is_zero() or self.normal_form(poly).is_zero()

    def is_subset(self, other: "Ideal") -> bool:
        self.ring.check_compatible(other.ring)
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal) or not self.ring.compatible(other.ring):
            return False
        return self.groebner(GREVLEX).polys == other.groebner(GREVLEX).polys

    __hash__ = None

    # arithmetic

    def __add__(self, other: "Ideal") -> "Ideal":
        self.ring.check_compatible(other.ring)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self.ring.check_compatible(other.ring)
        products = {f * g for f, g in itertools.product(self.gens, other.gens)}
        return Ideal(self.ring, sorted(products, key=str))

    def power(self, k: int) -> "Ideal":
        if k < 1:
            raise ValueError("ideal powers start at 1")
        combos = itertools.combinations_with_replacement(range(len(self.gens)), k)
        products = []
        for combo in combos:
            p = self.ring.one()
            for idx in combo:
                p = p * self.gens[idx]
            products.append(p)
        return Ideal(self.ring, products, f"{self.name}^{k}" if self.name else "")

    # graded structure

    def hilbert(self) -> HilbertData:
        """Hilbert data of R/I from the leading monomials of the grevlex basis."""
        if not self.ring.standard_graded:
            raise PreconditionError("Hilbert data needs a standard graded ring")
        with self._lock:
            if self._hilbert is None:
                basis = self.groebner(GREVLEX)
                self._hilbert = HilbertData.from_leading_monomials(basis.leading_monomials(), self.ring.nvars)
            return self._hilbert

    def graded_piece(self, m: int) -> List[Polynomial]:
        """Basis of the degree-m piece, one element per leading monomial in degree m."""
        basis = self.groebner(GREVLEX)
        if basis.is_unit:
            return [self.ring.monomial(e) for e in self.ring.monomials_of_degree(m)]
        leads = basis.leading_monomials()
        piece = []
        for exp in self.ring.monomials_of_degree(m):
            if any(all(a <= b for a, b in zip(lm, exp)) for lm in leads):
                mono = self.ring.monomial(exp)
                piece.append(mono - basis.normal_form(mono))
        return piece

    def trim(self) -> "Ideal":
        """Same ideal on a minimal homogeneous generating set."""
        basis = self.groebner(GREVLEX)
        if basis.is_unit or not basis.polys:
            trimmed = Ideal(self.ring, basis.polys, self.name)
        else:
            trimmed = Ideal(self.ring, minimal_generators(self, basis.polys), self.name)
        trimmed._bases = dict(self._bases)
        trimmed._hilbert = self._hilbert
        return trimmed

    def leading_ideal_contains(self, exp: Exponent) -> bool:
        return any(all(a <= b for a, b in zip(lm, exp)) for lm in self.groebner(GREVLEX).leading_monomials())


def coefficient_rows(polys: Sequence[Polynomial], monomials: Sequence[Exponent]) -> List[List]:
    """Coordinate vectors of the polynomials on the given monomial basis."""
    index = {e: j for j, e in enumerate(monomials)}
    zero = polys[0].ring.field.zero() if polys else 0
    rows = []
    for p in polys:
        row = [zero] * len(monomials)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    return rows


def minimal_generators(ideal: Ideal, candidates: Sequence[Polynomial]) -> List[Polynomial]:
    """
    Minimal generators chosen greedily among the candidates, degree by degree

    In degree d a candidate is kept when it is independent of R_1 * I_{d-1}
    and of the candidates already kept in degree d.
    """
    ring = ideal.ring
    chosen: List[Polynomial] = []
    by_degree: Dict[int, List[Polynomial]] = {}
    for g in candidates:
        by_degree.setdefault(g.degree(), []).append(g)
    for d in sorted(by_degree):
        monos = ring.monomials_of_degree(d)
        lower = [x * p for p in ideal.graded_piece(d - 1) for x in ring.gens()] if d > 0 else []
        rows = coefficient_rows(lower + by_degree[d], monos)
        picked = independent_rows(rows, len(monos), ring.field)
        chosen += [by_degree[d][i - len(lower)] for i in picked if i >= len(lower)]
    return chosen


# toolbox


def _auxiliary_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.field, (AUX_VARIABLE,) + ring.variables, MonomialOrder("elim", 1), (0,) + ring.weights)


def intersect(i: Ideal, j: Ideal) -> Ideal:
    """I ∩ J as the t-free part of t*I + (1-t)*J, t of weight 0 eliminated first."""
    i.ring.check_compatible(j.ring)
    if i.is_zero or j.is_zero:
        return Ideal(i.ring, [])
    if i.is_subset(j):
        return i
    if j.is_subset(i):
        return j
    big = _auxiliary_ring(i.ring)
    t = big.gen(0)
    gens = [t * g.in_ring(big) for g in i.gens] + [(big.one() - t) * g.in_ring(big) for g in j.gens]
    basis = _groebner(gens)
    kept = [Polynomial(i.ring, {e[1:]: c for e, c in g.terms.items()}) for g in basis
            if all(e[0] == 0 for e in g.terms)]
    return Ideal(i.ring, kept)


def _quotient_by_poly(i: Ideal, g: Polynomial) -> Ideal:
    if i.contains(g):
        return Ideal.unit(i.ring)
    meet = intersect(i, Ideal(i.ring, [g]))
    return Ideal(i.ring, [h.exact_divide(g) for h in meet.gens])


def quotient(i: Ideal, j: Union[Ideal, Polynomial, None] = None, saturate: bool = False) -> Ideal:
    """
    Ideal quotient (I : J), or the saturation (I : J^inf) when ``saturate`` is set

    J defaults to the irrelevant ideal; a single polynomial is accepted for J.
    """
    if j is None:
        j = Ideal.irrelevant(i.ring)
    elif isinstance(j, Polynomial):
        j = Ideal(i.ring, [j])
    i.ring.check_compatible(j.ring)
    if saturate:
        return saturate_ideal(i, j)
    if j.is_zero:
        return Ideal.unit(i.ring)
    return reduce(intersect, [_quotient_by_poly(i, g) for g in j.gens])


def _is_primary_to_irrelevant(j: Ideal) -> bool:
    return j.ring.standard_graded and not j.is_unit and j.hilbert().krull_dim == 0


def saturate_ideal(i: Ideal, j: Optional[Ideal] = None) -> Ideal:
    """(I : J^inf); J defaults to the irrelevant ideal."""
    if i.is_zero:
        return i
    if j is None or _is_primary_to_irrelevant(j):
        return _saturate_irrelevant(i)
    current = i
    rounds = 0
    while True:
        rounds += 1
        nxt = quotient(current, j)
        if nxt.is_subset(current):
            logger.debug(f"✅ saturation stable after {rounds} quotient steps")
            return current
        current = nxt


def _divide_out_last(basis: GroebnerBasis, ring: PolyRing) -> List[Polynomial]:
    last = ring.nvars - 1
    return [Polynomial(ring, g.divide_variable_power(last, g.variable_power(last)).terms) for g in basis]


def _same_hilbert_polynomial(a: HilbertData, b: HilbertData) -> bool:
    return a.krull_dim == b.krull_dim and a.hp_coefficients == b.hp_coefficients


def _saturate_irrelevant(i: Ideal) -> Ideal:
    """
    Saturation by the irrelevant ideal through a general linear form l

    (I : l^inf) is read off a grevlex basis with l as last variable by
    dividing out powers of l. It equals (I : m^inf) exactly when the Hilbert
    polynomials agree, which is checked before accepting the result.
    """
    ring = i.ring
    if not ring.standard_graded:
        return _saturate_iterated(i, Ideal.irrelevant(ring))
    if i.is_unit:
        return i
    target = i.hilbert()
    if target.krull_dim <= 0:
        return Ideal.unit(ring)
    n = ring.nvars
    rng = np.random.default_rng(get_config().seed)
    for attempt in range(BAYER_ATTEMPTS):
        if attempt == 0:
            shifted = i
            coeffs = [ring.field.zero()] * (n - 1)
        else:
            coeffs = [ring.field.random_element(rng, 10) for _ in range(n - 1)]
            shifted = change_last_variable(i, coeffs, inverse=False)
        candidate = Ideal(ring, _divide_out_last(shifted.groebner(GREVLEX), ring))
        if attempt > 0:
            candidate = change_last_variable(candidate, coeffs, inverse=True)
        if _same_hilbert_polynomial(candidate.hilbert(), target):
            return candidate
        logger.debug(f"⚠️ linear form attempt {attempt} is a zero divisor, retrying")
    logger.warning("⚠️ no general linear form found, saturating by iterated quotients")
    return _saturate_iterated(i, Ideal.irrelevant(ring))


def _saturate_iterated(i: Ideal, j: Ideal) -> Ideal:
    current = i
    while True:
        nxt = quotient(current, j)
        if nxt.is_subset(current):
            return current
        current = nxt


def change_last_variable(i: Ideal, coeffs: Sequence, inverse: bool) -> Ideal:
    """Apply x_n -> x_n - sum c_k x_k (or its inverse with + when ``inverse``)."""
    ring = i.ring
    xs = ring.gens()
    shift = ring.zero()
    for c, x in zip(coeffs, xs[:-1]):
        shift = shift + x * c
    last = xs[-1] + shift if inverse else xs[-1] - shift
    images = xs[:-1] + [last]
    return Ideal(ring, [g.substitute(images, ring) for g in i.gens])


def change_coordinates(i: Ideal, matrix: Sequence[Sequence]) -> Ideal:
    """Image of I under x_j -> sum_k matrix[j][k] x_k."""
    ring = i.ring
    xs = ring.gens()
    images = []
    for row in matrix:
        image = ring.zero()
        for c, x in zip(row, xs):
            image = image + x * ring.field(c)
        images.append(image)
    return Ideal(ring, [g.substitute(images, ring) for g in i.gens], i.name)


def eliminate(i: Ideal, variables: Sequence[str]) -> Ideal:
    """
    I ∩ k[kept variables], returned as an ideal of the subring

    Uses a block order with the eliminated variables first.
    """
    ring = i.ring
    drop = [ring.index(v) for v in variables]
    keep = [k for k in range(ring.nvars) if k not in drop]
    if not keep:
        raise PreconditionError("eliminate needs at least one kept variable")
    if not drop:
        return i
    perm = drop + keep
    big = PolyRing(ring.field, [ring.variables[k] for k in perm], MonomialOrder("elim", len(drop)),
                   [ring.weights[k] for k in perm])
    sub = PolyRing(ring.field, [ring.variables[k] for k in keep], weights=[ring.weights[k] for k in keep])
    basis = _groebner([g.in_ring(big) for g in i.gens])
    kept = []
    for g in basis:
        if all(not any(e[:len(drop)]) for e in g.terms):
            kept.append(Polynomial(sub, {e[len(drop):]: c for e, c in g.terms.items()}))
    return Ideal(sub, kept)


def hilbert(i: Ideal) -> HilbertData:
    return i.hilbert()


def graded_piece_dim(i: Ideal, m: int) -> int:
    """h^0(I(m)) of the associated sheaf when I is saturated: dim R_m - HF(R/I, m)."""
    return i.ring.count_monomials(m) - i.hilbert().hilbert_function(m)


@dataclass
class SmoothnessResult:
    smooth: bool
    sing_ideal: Ideal
    codim: int


def singular_locus_smooth(i: Ideal, codim: Optional[int] = None) -> SmoothnessResult:
    """
    Jacobian criterion at the expected codimension c

    The singular scheme is cut out by I and the c x c minors of the Jacobian;
    the scheme is smooth iff that ideal defines the empty projective scheme.
    """
    data = i.hilbert()
    if codim is None:
        codim = data.codim
    elif codim != data.codim:
        raise PreconditionError(f"expected codimension {codim} but the Hilbert data give {data.codim}")
    gens = i.trim().gens
    jac = jacobian_matrix(gens)
    minors = []
    for rows in itertools.combinations(range(jac.nrows), codim):
        for cols in itertools.combinations(range(jac.ncols), codim):
            m = jac.minor(rows, cols)
            if not m.is_zero():
                minors.append(m)
    sing = Ideal(i.ring, gens + minors, "singular")
    if sing.hilbert().is_empty_scheme:
        return SmoothnessResult(True, Ideal.unit(i.ring), codim)
    return SmoothnessResult(False, saturate_ideal(sing), codim)


def power_saturated(i: Ideal, k: int) -> Ideal:
    """saturate(I^k): sections vanishing to order k along the scheme of I."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return i
    return saturate_ideal(i.power(k))


def linked_ideal(i: Ideal, f: Polynomial, g: Polynomial) -> Ideal:
    """
    Liaison residual (<f, g> : I)

    Raises:
        LiaisonError: f or g is not in I, or they share a common factor
    """
    for name, form in (("f", f), ("g", g)):
        if not i.contains(form):
            raise LiaisonError(f"{name} = {form} is not in the ideal")
    ci = Ideal(i.ring, [f, g], "complete intersection")
    if ci.hilbert().codim != 2:
        raise LiaisonError("f and g share a common factor (not a complete intersection)")
    residual = quotient(ci, i)
    residual.name = "residual"
    return residual.trim()


def connectedness_h1(i: Ideal) -> int:
    """h^1(I_C(0)); zero iff the curve is connected."""
    from src.homology.cohomology import curve_cohomology
    table = curve_cohomology(i, (0, 0), certify=False)
    return table.h(1, 0)

