"""
Groebner Engine
Buchberger's algorithm for homogeneous ideals with Gebauer-Moeller pair
criteria, degree-by-degree pair processing and explicit resource budgets
"""

import heapq
import logging
import threading
import time
from bisect import insort
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.polynomial import Polynomial
from src.core.ring import Exponent, MonomialOrder, PolyRing
from src.utils.config import get_config
from src.utils.errors import InhomogeneousError, ResourceBudgetError

logger = logging.getLogger(__name__)

# internal polynomial: {sort key: coefficient}; monomials are identified by key
Terms = Dict[int, object]


@dataclass(frozen=True)
class Budget:
    """Hard limits on a single Groebner computation."""
    max_degree: int = 40
    max_pairs: int = 200000
    max_seconds: float = 1800.0

    @classmethod
    def from_config(cls, config=None) -> "Budget":
        config = config or get_config()
        return cls(config.max_degree, config.max_pairs, config.max_seconds)


class _Workspace:
    """Monomial table and monic reducers shared by one computation."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.field = ring.field
        self.p = ring.field.modulus
        self.codec = ring.codec
        self.mono: Dict[int, int] = {}
        self.lm_key: List[int] = []
        self.lm_packed: List[int] = []
        self.lm_exp: List[Exponent] = []
        self.tails: List[List[Tuple[int, int, object]]] = []

    def import_poly(self, poly: Polynomial) -> Terms:
        terms: Terms = {}
        for exp, c in poly.terms.items():
            k = self.ring.key(exp)
            self.mono[k] = self.codec.pack(exp)
            terms[k] = c
        return terms

    def export_poly(self, terms: Terms) -> Polynomial:
        unpack = self.codec.unpack
        return Polynomial(self.ring, {unpack(self.mono[k]): c for k, c in terms.items()})

    def add_reducer(self, terms: Terms) -> int:
        """Store a monic polynomial as a reducer; returns its index."""
        lead = max(terms)
        self.lm_key.append(lead)
        self.lm_packed.append(self.mono[lead])
        self.lm_exp.append(self.codec.unpack(self.mono[lead]))
        mono = self.mono
        self.tails.append([(k, mono[k], c) for k, c in sorted(terms.items(), reverse=True) if k != lead])
        return len(self.lm_key) - 1

    def make_monic(self, terms: Terms) -> Terms:
        lead = max(terms)
        c = terms[lead]
        if c == 1:
            return terms
        inv = self.field.inv(c)
        if self.p:
            return {k: v * inv % self.p for k, v in terms.items()}
        return {k: v * inv for k, v in terms.items()}

    def find_reducer(self, k: int, packed: int, active: List[Tuple[int, int]]) -> Optional[int]:
        """Reducer with the smallest leading monomial dividing the monomial, ties by index."""
        guard = self.codec.guard
        for lk, idx in active:
            if lk > k:
                return None
            if ((packed | guard) - self.lm_packed[idx]) & guard == guard:
                return idx
        return None

    def reduce(self, terms: Terms, active: List[Tuple[int, int]]) -> Terms:
        """Full reduction of every term; consumes ``terms``."""
        mono = self.mono
        p = self.p
        heap = [-k for k in terms]
        heapq.heapify(heap)
        out: Terms = {}
        while heap:
            k = -heapq.heappop(heap)
            c = terms.pop(k, 0)
            if not c:
                continue
            pk = mono[k]
            r = self.find_reducer(k, pk, active)
            if r is None:
                out[k] = c
                continue
            sk = k - self.lm_key[r]
            sp = pk - self.lm_packed[r]
            for tk, tp, tc in self.tails[r]:
                nk = tk + sk
                if nk not in mono:
                    mono[nk] = tp + sp
                prev = terms.get(nk)
                if prev is None:
                    terms[nk] = (-c * tc) % p if p else -c * tc
                    heapq.heappush(heap, -nk)
                else:
                    terms[nk] = (prev - c * tc) % p if p else prev - c * tc
        return out

    def spoly(self, i: int, j: int, lcm_key: int, lcm_packed: int) -> Terms:
        mono = self.mono
        p = self.p
        terms: Terms = {}
        for idx, sign in ((i, 1), (j, -1)):
            sk = lcm_key - self.lm_key[idx]
            sp = lcm_packed - self.lm_packed[idx]
            for tk, tp, tc in self.tails[idx]:
                nk = tk + sk
                if nk not in mono:
                    mono[nk] = tp + sp
                v = terms.get(nk, 0) + sign * tc
                terms[nk] = v % p if p else v
        return {k: v for k, v in terms.items() if v}


class GroebnerBasis:
    """
    Reduced Groebner basis of a homogeneous ideal for one monomial order

    Elements are monic and sorted by increasing leading monomial, so the
    basis is canonical for (ideal, order).

    Args:
        ring: ring carrying the order the basis was computed for
        polys: the reduced basis
        truncated_at: degree bound the computation stopped at, if any
    """

    def __init__(self, ring: PolyRing, polys: Sequence[Polynomial], truncated_at: Optional[int] = None):
        self.ring = ring
        self.polys = list(polys)
        self.truncated_at = truncated_at
        self._workspace: Optional[_Workspace] = None
        self._active: List[Tuple[int, int]] = []
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.polys == other.polys

    @property
    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def leading_monomials(self) -> List[Exponent]:
        return [g.leading_monomial() for g in self.polys]

    def _prepare(self) -> _Workspace:
        if self._workspace is None:
            ws = _Workspace(self.ring)
            for g in self.polys:
                idx = ws.add_reducer(ws.import_poly(g))
                insort(self._active, (ws.lm_key[idx], idx))
            self._workspace = ws
        return self._workspace

    def normal_form(self, poly: Polynomial) -> Polynomial:
        """Remainder of full reduction; zero exactly for ideal members."""
        poly = poly.in_ring(self.ring)
        if poly.is_zero():
            return poly
        with self._lock:
            ws = self._prepare()
            return ws.export_poly(ws.reduce(ws.import_poly(poly), self._active))

    def reduces_to_zero(self, poly: Polynomial) -> bool:
        return self.normal_form(poly).is_zero()


def check_homogeneous(gens: Sequence[Polynomial]) -> None:
    for g in gens:
        if not g.is_homogeneous():
            raise InhomogeneousError(f"generator {g} is not homogeneous for weights {g.ring.weights}")


def groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None, budget: Optional[Budget] = None,
             degree_bound: Optional[int] = None) -> GroebnerBasis:
    """
    Reduced Groebner basis of a homogeneous ideal

    Args:
        gens: homogeneous generators, all in one ring
        order: monomial order (defaults to the ring's)
        budget: degree / pair / time limits (defaults from configuration)
        degree_bound: stop after all pairs of this degree; the result is then
            a basis only up to that degree (positive gradings only)

    Returns:
        GroebnerBasis with monic elements sorted by increasing leading monomial

    Raises:
        InhomogeneousError: a generator is not homogeneous
        ResourceBudgetError: a budget was exceeded
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("groebner needs at least one nonzero generator")
    ring = gens[0].ring
    if order is not None:
        ring = ring.with_order(order)
    gens = [g.in_ring(ring) for g in gens]
    check_homogeneous(gens)
    if degree_bound is not None and not ring.positively_graded:
        raise ValueError("degree truncation needs positive weights")
    if ring.order.name != "lex" and any(w == 0 for w in ring.weights[ring.order.split:]):
        raise ValueError("weight-0 variables must sit in the elimination block")
    budget = budget or Budget.from_config()
    engine = _Buchberger(ring, budget, degree_bound)
    return engine.run(gens)


class _Buchberger:
    def __init__(self, ring: PolyRing, budget: Budget, degree_bound: Optional[int]):
        self.ring = ring
        self.budget = budget
        self.degree_bound = degree_bound
        self.ws = _Workspace(ring)
        self.active: List[Tuple[int, int]] = []  # (lm key, index), sorted
        self.pairs: List[Tuple[int, int, int, int]] = []  # heap of (degree, lcm key, i, j)
        self.lcm_cache: Dict[Tuple[int, int], Tuple[int, int, Exponent]] = {}
        self.reduced_pairs = 0

    def _lcm(self, i: int, j: int) -> Tuple[int, int, Exponent]:
        cached = self.lcm_cache.get((i, j))
        if cached is None:
            exp = tuple(max(a, b) for a, b in zip(self.ws.lm_exp[i], self.ws.lm_exp[j]))
            cached = (self.ring.key(exp), self.ring.codec.pack(exp), exp)
            self.lcm_cache[(i, j)] = cached
        return cached

    def _coprime(self, i: int, j: int) -> bool:
        return all(not (a and b) for a, b in zip(self.ws.lm_exp[i], self.ws.lm_exp[j]))

    def _divides(self, a: Exponent, b: Exponent) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def _update(self, h: int) -> None:
        """Gebauer-Moeller installation of the new basis element h."""
        lm_h = self.ws.lm_exp[h]
        candidates = [g for _, g in self.active]
        kept: List[int] = []
        for pos, g in enumerate(candidates):
            lcm_hg = self._lcm(g, h)[2]
            if self._coprime(g, h):
                kept.append(g)
                continue
            rest = candidates[pos + 1:]
            if any(self._divides(self._lcm(f, h)[2], lcm_hg) for f in rest):
                continue
            if any(self._divides(self._lcm(f, h)[2], lcm_hg) for f in kept):
                continue
            kept.append(g)
        new_pairs = [(g, h) for g in kept if not self._coprime(g, h)]

        survivors = []
        for item in self.pairs:
            _, _, i, j = item
            if i < 0:
                survivors.append(item)
                continue
            lcm_ij = self._lcm(i, j)[2]
            if (self._divides(lm_h, lcm_ij) and self._lcm(i, h)[2] != lcm_ij
                    and self._lcm(j, h)[2] != lcm_ij):
                continue
            survivors.append(item)
        for g, hh in new_pairs:
            key, _, exp = self._lcm(g, hh)
            survivors.append((self.ring.degree_of(exp), key, g, hh))
        heapq.heapify(survivors)
        self.pairs = survivors

        self.active = [(k, g) for k, g in self.active if not self._divides(lm_h, self.ws.lm_exp[g])]
        insort(self.active, (self.ws.lm_key[h], h))

    def _check_budget(self, degree: int, started: float) -> None:
        if degree > self.budget.max_degree:
            raise ResourceBudgetError("max_degree", self.budget.max_degree,
                                      f"S-pair degree {degree} exceeds max_degree {self.budget.max_degree}")
        if self.reduced_pairs > self.budget.max_pairs:
            raise ResourceBudgetError("max_pairs", self.budget.max_pairs)
        if time.monotonic() - started > self.budget.max_seconds:
            raise ResourceBudgetError("max_seconds", self.budget.max_seconds)

    def run(self, gens: Sequence[Polynomial]) -> GroebnerBasis:
        started = time.monotonic()
        ws = self.ws
        inputs = [ws.import_poly(g) for g in gens]
        for idx, g in enumerate(gens):
            lead = max(inputs[idx])
            heapq.heappush(self.pairs, (g.degree(), lead, -1, idx))
        truncated_at = None
        current_degree = None
        while self.pairs:
            degree = self.pairs[0][0]
            if self.degree_bound is not None and degree > self.degree_bound:
                truncated_at = self.degree_bound
                break
            if degree != current_degree:
                current_degree = degree
                logger.debug(f"🔄 degree {degree}: {len(self.pairs)} pairs queued, basis size {len(self.active)}")
            self._check_budget(degree, started)
            _, lcm_key, i, j = heapq.heappop(self.pairs)
            if i < 0:
                terms = dict(inputs[j])
            else:
                self.reduced_pairs += 1
                _, lcm_packed, _ = self._lcm(i, j)
                terms = ws.spoly(i, j, lcm_key, lcm_packed)
            if not terms:
                continue
            h = ws.reduce(terms, self.active)
            if not h:
                continue
            h = ws.make_monic(h)
            idx = ws.add_reducer(h)
            if not any(ws.lm_exp[idx]):
                logger.debug("✅ unit ideal")
                return GroebnerBasis(self.ring, [self.ring.one()])
            self._update(idx)
        return GroebnerBasis(self.ring, self._interreduce(), truncated_at)

    def _interreduce(self) -> List[Polynomial]:
        ws = self.ws
        result = []
        for lk, idx in self.active:
            others = [(k, g) for k, g in self.active if g != idx]
            tail = {k: c for k, _, c in ws.tails[idx]}
            reduced = ws.reduce(tail, others)
            reduced[lk] = ws.field.one()
            result.append(ws.export_poly(reduced))
        result.sort(key=lambda g: self.ring.key(g.leading_monomial()))
        return result
