"""
Graded Free Resolutions
Betti tables from Koszul homology and explicit minimal resolutions of R/I
"""

import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.ideal import GREVLEX, Ideal
from src.core.linalg import independent_rows, left_kernel, rank
from src.core.polynomial import Polynomial
from src.core.ring import Exponent, PolyRing
from src.utils.config import get_config
from src.utils.errors import DetqError, ResourceBudgetError

logger = logging.getLogger(__name__)


class BettiTable:
    """
    Graded Betti numbers beta_{i,j} of R/I

    Following the Macaulay2 layout, row r and column i hold beta_{i,i+r},
    the number of copies of R(-i-r) in the i-th free module.

    Args:
        entries: mapping (i, j) -> beta_{i,j}; zero entries may be omitted
    """

    def __init__(self, entries: Dict[Tuple[int, int], int]):
        self.entries = {(i, j): b for (i, j), b in entries.items() if b}

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"BettiTable({self.to_json()})"

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def table(self) -> np.ndarray:
        out = np.zeros((self.regularity + 1, self.length + 1), dtype=int)
        for (i, j), b in self.entries.items():
            out[j - i, i] = b
        return out

    def totals(self) -> List[int]:
        return [int(t) for t in self.table().sum(axis=0)]

    def numerator(self) -> Tuple[int, ...]:
        """Alternating sum sum_{i,j} (-1)^i beta_{i,j} t^j."""
        top = max((j for _, j in self.entries), default=0)
        coeffs = [0] * (top + 1)
        for (i, j), b in self.entries.items():
            coeffs[j] += (-1) ** i * b
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def shifts(self, i: int) -> List[int]:
        """Degrees of the generators of the i-th free module, with repetition."""
        out: List[int] = []
        for (k, j), b in sorted(self.entries.items()):
            if k == i:
                out.extend([j] * b)
        return out

    def to_json(self) -> Dict[str, int]:
        return {f"{i},{j}": b for (i, j), b in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, data: Dict[str, int]) -> "BettiTable":
        entries = {}
        for key, b in data.items():
            i, j = (int(x) for x in key.split(","))
            entries[(i, j)] = int(b)
        return cls(entries)

    def __str__(self) -> str:
        table = self.table()
        width = max([len(str(t)) for t in self.totals()] + [len(str(table.shape[1] - 1)), 1])
        lines = ["       " + " ".join(f"{i:>{width}}" for i in range(table.shape[1])),
                 "total: " + " ".join(f"{t:>{width}}" for t in self.totals())]
        for r in range(table.shape[0]):
            cells = [str(b) if b else "." for b in table[r]]
            lines.append(f"{r:>5}: " + " ".join(f"{c:>{width}}" for c in cells))
        return "\n".join(lines)


class _QuotientPieces:
    """Standard-monomial bases of (R/I)_m and multiplication by the variables."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self.basis = ideal.groebner(GREVLEX)
        self._pieces: Dict[int, List[Exponent]] = {}
        self._index: Dict[int, Dict[Exponent, int]] = {}
        self._mult: Dict[Tuple[int, Exponent], Dict[int, object]] = {}

    def piece(self, m: int) -> List[Exponent]:
        if m not in self._pieces:
            if m < 0 or self.basis.is_unit:
                standard = []
            else:
                standard = [e for e in self.ring.monomials_of_degree(m) if not self.ideal.leading_ideal_contains(e)]
            self._pieces[m] = standard
            self._index[m] = {e: k for k, e in enumerate(standard)}
        return self._pieces[m]

    def times_variable(self, s: int, exp: Exponent) -> Dict[int, object]:
        """Coordinates of x_s * exp in the standard basis one degree up."""
        key = (s, exp)
        if key not in self._mult:
            up = tuple(e + (1 if k == s else 0) for k, e in enumerate(exp))
            m = sum(up)
            self.piece(m)
            nf = self.basis.normal_form(self.ring.monomial(up))
            index = self._index[m]
            self._mult[key] = {index[e]: c for e, c in nf.terms.items()}
        return self._mult[key]


def _koszul_differential(pieces: _QuotientPieces, i: int, j: int) -> Tuple[List[List], int]:
    """
    Matrix of d_i : wedge^i V (x) (R/I)_{j-i} -> wedge^{i-1} V (x) (R/I)_{j-i+1}

    Rows index the source basis, columns the target basis.
    """
    ring = pieces.ring
    field = ring.field
    n = ring.nvars
    source_piece = pieces.piece(j - i)
    target_piece = pieces.piece(j - i + 1)
    target_subsets = list(itertools.combinations(range(n), i - 1))
    target_offset = {s: k * len(target_piece) for k, s in enumerate(target_subsets)}
    ncols = len(target_subsets) * len(target_piece)
    rows: List[List] = []
    for subset in itertools.combinations(range(n), i):
        for exp in source_piece:
            row = [field.zero()] * ncols
            for r, s in enumerate(subset):
                rest = subset[:r] + subset[r + 1:]
                base = target_offset[rest]
                for col, c in pieces.times_variable(s, exp).items():
                    term = c if r % 2 == 0 else field.neg(c)
                    row[base + col] = field.add(row[base + col], term)
            rows.append(row)
    return rows, ncols


def _koszul_rank(pieces: _QuotientPieces, i: int, j: int) -> int:
    n = pieces.ring.nvars
    if i < 1 or i > n or j - i < 0:
        return 0
    rows, ncols = _koszul_differential(pieces, i, j)
    if not rows or ncols == 0:
        return 0
    return rank(rows, ncols, pieces.ring.field)


def minimal_resolution_betti(i: Ideal, max_degree: Optional[int] = None) -> BettiTable:
    """
    Graded Betti numbers of R/I by Koszul homology

    beta_{i,j} = dim Tor_i(R/I, K)_j is the homology of the degree-j strand of
    the Koszul complex tensored with R/I. Every shift is at most deg N(t), the
    degree of the Hilbert numerator, so the computation is finite and the
    table is certified against that numerator.

    Raises:
        ResourceBudgetError: deg N(t) exceeds the configured Betti degree cap
    """
    cached = i.derived.get("betti")
    if cached is not None:
        return cached
    ring = i.ring
    data = i.hilbert()
    top = len(data.numerator) - 1
    cap = max_degree if max_degree is not None else get_config().max_betti_degree
    if top > cap:
        raise ResourceBudgetError("max_betti_degree", cap, f"Betti table reaches degree {top}, above the cap {cap}")
    logger.info(f"🔄 Koszul homology of {i!r} up to degree {top}")

    pieces = _QuotientPieces(i)
    n = ring.nvars
    entries: Dict[Tuple[int, int], int] = {}
    ranks: Dict[Tuple[int, int], int] = {}

    def d_rank(k: int, j: int) -> int:
        if (k, j) not in ranks:
            ranks[(k, j)] = _koszul_rank(pieces, k, j)
        return ranks[(k, j)]

    for j in range(top + 1):
        for k in range(0, min(n, j) + 1):
            dim = comb(n, k) * len(pieces.piece(j - k))
            if dim == 0:
                continue
            beta = dim - d_rank(k, j) - d_rank(k + 1, j)
            if beta:
                entries[(k, j)] = beta
    table = BettiTable(entries)
    if table.numerator() != tuple(data.numerator):
        raise DetqError(f"Betti table {table.to_json()} disagrees with the Hilbert numerator {data.numerator}")
    logger.info(f"✅ Betti table of {i!r}: {table.to_json()}")
    i.derived["betti"] = table
    return table


def generated_in_degree(i: Ideal) -> int:
    """Largest degree of a minimal generator of I."""
    betti = minimal_resolution_betti(i)
    degrees = [j for (k, j) in betti.entries if k == 1]
    if not degrees:
        raise ValueError("the zero ideal has no generators")
    return max(degrees)


# explicit resolutions


def _graded_map_rows(ring: PolyRing, images: Sequence[Sequence[Polynomial]], source_degrees: Sequence[int],
                     target_degrees: Sequence[int], degree: int) -> Tuple[List[List], List[Tuple[int, Exponent]], int]:
    """
    Degree-d piece of a map of graded free modules in monomial coordinates

    Args:
        images: images[k][l] is the l-th coordinate of the image of the k-th
            source generator
        source_degrees: degree of each source generator
        target_degrees: degree of each target generator
        degree: the graded piece

    Returns:
        Tuple of (rows, row labels (k, monomial), number of columns)
    """
    field = ring.field
    target_monomials = [ring.monomials_of_degree(degree - t) for t in target_degrees]
    offsets = list(itertools.accumulate([0] + [len(m) for m in target_monomials]))
    index = [{e: offsets[l] + c for c, e in enumerate(mons)} for l, mons in enumerate(target_monomials)]
    ncols = offsets[-1]
    rows: List[List] = []
    labels: List[Tuple[int, Exponent]] = []
    for k, s in enumerate(source_degrees):
        for exp in ring.monomials_of_degree(degree - s):
            row = [field.zero()] * ncols
            for l, entry in enumerate(images[k]):
                for e, c in entry.mul_monomial(exp).terms.items():
                    row[index[l][e]] = c
            rows.append(row)
            labels.append((k, exp))
    return rows, labels, ncols


def _vector_from_row(ring: PolyRing, row: Sequence, labels: Sequence[Tuple[int, Exponent]],
                     size: int) -> List[Polynomial]:
    components: List[Dict[Exponent, object]] = [{} for _ in range(size)]
    for c, (k, exp) in zip(row, labels):
        if c != 0:
            components[k][exp] = c
    return [Polynomial(ring, terms) for terms in components]


@dataclass
class FreeResolution:
    """
    Minimal graded free resolution 0 <- R <- F_1 <- F_2 <- ... of R/I

    Attributes:
        ring: polynomial ring
        degrees: degrees[i] lists the generator degrees of F_i (degrees[0] == [0])
        maps: maps[i - 1][k] is the image of the k-th generator of F_i in F_{i-1}
    """
    ring: PolyRing
    degrees: List[List[int]]
    maps: List[List[List[Polynomial]]] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def betti(self) -> BettiTable:
        entries: Dict[Tuple[int, int], int] = {}
        for i, degs in enumerate(self.degrees):
            for d in degs:
                entries[(i, d)] = entries.get((i, d), 0) + 1
        return BettiTable(entries)

    def dual_rank(self, i: int, degree: int) -> int:
        """Rank in degree ``degree`` of the dual map F_{i-1}^* -> F_i^*."""
        if i < 1 or i > self.length or not self.degrees[i] or not self.degrees[i - 1]:
            return 0
        forward = self.maps[i - 1]
        images = [[forward[k][l] for k in range(len(self.degrees[i]))] for l in range(len(self.degrees[i - 1]))]
        rows, _, ncols = _graded_map_rows(self.ring, images, [-d for d in self.degrees[i - 1]],
                                          [-d for d in self.degrees[i]], degree)
        if not rows or ncols == 0:
            return 0
        return rank(rows, ncols, self.ring.field)

    def ext_dimension(self, i: int, degree: int) -> int:
        """dim Ext^i(R/I, R)_degree, the cohomology of the dual complex at F_i^*."""
        if i < 0 or i > self.length:
            return 0
        dim = sum(self.ring.count_monomials(degree + d) for d in self.degrees[i])
        return dim - self.dual_rank(i, degree) - self.dual_rank(i + 1, degree)


def minimal_resolution(i: Ideal) -> FreeResolution:
    """
    Explicit minimal graded free resolution of R/I, degree by degree

    Each syzygy module is the kernel of the previous map, computed piece by
    piece up to deg N(t); its minimal generators in degree j are the kernel
    vectors independent of R_1 times the kernel in degree j - 1.
    """
    cached = i.derived.get("resolution")
    if cached is not None:
        return cached
    ring = i.ring
    betti = minimal_resolution_betti(i)
    top = max((j for _, j in betti.entries), default=0)
    gens = i.trim().gens
    resolution = FreeResolution(ring, [[0]])
    if not gens:
        i.derived["resolution"] = resolution
        return resolution
    field = ring.field
    resolution.degrees.append([g.degree() for g in gens])
    resolution.maps.append([[g] for g in gens])

    while True:
        source = resolution.degrees[-1]
        target = resolution.degrees[-2]
        images = resolution.maps[-1]
        new_degrees: List[int] = []
        new_images: List[List[Polynomial]] = []
        previous_kernel: List[List[Polynomial]] = []
        for j in range(min(source) + 1, top + 1):
            rows, labels, ncols = _graded_map_rows(ring, images, source, target, j)
            if not rows:
                previous_kernel = []
                continue
            kernel_rows = left_kernel(rows, ncols, field)
            kernel = [_vector_from_row(ring, row, labels, len(source)) for row in kernel_rows]
            if kernel:
                lifted = [[ring.gen(s) * c for c in vec] for vec in previous_kernel for s in range(ring.nvars)]
                candidates = lifted + kernel
                coords = [_module_coordinates(vec, labels) for vec in candidates]
                chosen = independent_rows(coords, len(labels), field)
                for idx in chosen:
                    if idx >= len(lifted):
                        new_degrees.append(j)
                        new_images.append(candidates[idx])
            previous_kernel = kernel
        if not new_degrees:
            break
        resolution.degrees.append(new_degrees)
        resolution.maps.append(new_images)
        if resolution.length > ring.nvars:
            raise DetqError("resolution longer than the number of variables")

    if resolution.betti() != betti:
        raise DetqError(f"explicit resolution {resolution.betti().to_json()} disagrees with {betti.to_json()}")
    logger.info(f"✅ Minimal resolution of {i!r} has length {resolution.length}")
    i.derived["resolution"] = resolution
    return resolution


def _module_coordinates(vec: Sequence[Polynomial], labels: Sequence[Tuple[int, Exponent]]) -> List:
    index = {label: c for c, label in enumerate(labels)}
    field = vec[0].ring.field
    row = [field.zero()] * len(labels)
    for k, comp in enumerate(vec):
        for e, c in comp.terms.items():
            row[index[(k, e)]] = c
    return row
