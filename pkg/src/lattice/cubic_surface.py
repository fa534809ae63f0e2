"""
Cubic Surface Lattice
Classes d*l - sum a_i e_i on the plane blown up at six points, the 27 lines,
Cremona reduction and the search for curve classes of given degree and genus
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, Set, Tuple

logger = logging.getLogger(__name__)

NPOINTS = 6


@dataclass(frozen=True)
class SurfaceClass:
    """
    The class d*l - sum a_i e_i

    Attributes:
        d: coefficient of the pulled-back line class l
        a: the six multiplicities a_1..a_6
    """
    d: int
    a: Tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != NPOINTS:
            raise ValueError(f"a cubic surface class needs {NPOINTS} multiplicities, got {len(self.a)}")

    @classmethod
    def parse(cls, text: str) -> "SurfaceClass":
        """Read ``"12,5,5,4,4,4,4"`` or ``"12;5,5,4,4,4,4"``."""
        values = [int(v) for v in text.replace(";", ",").split(",") if v.strip()]
        return cls(values[0], tuple(values[1:]))

    def dot(self, other: "SurfaceClass") -> int:
        return self.d * other.d - sum(x * y for x, y in zip(self.a, other.a))

    @property
    def degree(self) -> int:
        """Degree in P^3, -K . c = 3d - sum a_i."""
        return 3 * self.d - sum(self.a)

    @property
    def genus(self) -> int:
        """Arithmetic genus C(d-1, 2) - sum C(a_i, 2) of the plane model."""
        return (self.d - 1) * (self.d - 2) // 2 - sum(x * (x - 1) // 2 for x in self.a)

    def sorted(self) -> "SurfaceClass":
        return SurfaceClass(self.d, tuple(sorted(self.a, reverse=True)))

    def is_standard(self) -> bool:
        a = sorted(self.a, reverse=True)
        return list(self.a) == a and self.d >= a[0] + a[1] + a[2]

    def __str__(self) -> str:
        return f"({self.d}; {','.join(str(x) for x in self.a)})"


ANTICANONICAL = SurfaceClass(3, (1,) * NPOINTS)


def _unit(i: int, value: int = 1) -> Tuple[int, ...]:
    return tuple(value if j == i else 0 for j in range(NPOINTS))


def line_classes() -> Dict[str, SurfaceClass]:
    """The 27 lines: e_i, l - e_i - e_j and the conics 2l - sum_{j != i} e_j."""
    lines: Dict[str, SurfaceClass] = {}
    for i in range(NPOINTS):
        lines[f"e{i + 1}"] = SurfaceClass(0, _unit(i, -1))
    for i, j in itertools.combinations(range(NPOINTS), 2):
        lines[f"l{i + 1}{j + 1}"] = SurfaceClass(1, tuple(1 if k in (i, j) else 0 for k in range(NPOINTS)))
    for i in range(NPOINTS):
        lines[f"c{i + 1}"] = SurfaceClass(2, tuple(0 if k == i else 1 for k in range(NPOINTS)))
    return lines


LINES = line_classes()


def secancy_counts(c: SurfaceClass) -> List[Tuple[str, int]]:
    """(line name, c . line) for every line, largest intersection first."""
    return sorted(((name, c.dot(line)) for name, line in LINES.items()), key=lambda t: (-t[1], t[0]))


def cubic_secant_tally(c: SurfaceClass) -> Dict[int, int]:
    """Histogram of c . L over the 27 lines L."""
    return dict(sorted(Counter(value for _, value in secancy_counts(c)).items(), reverse=True))


def meets_all_lines_nonnegatively(c: SurfaceClass) -> bool:
    return all(c.dot(line) >= 0 for line in LINES.values())


def cremona_move(c: SurfaceClass) -> SurfaceClass:
    """Quadratic transformation centered at the first three points."""
    d, (a1, a2, a3, *rest) = c.d, c.a
    return SurfaceClass(2 * d - a1 - a2 - a3, (d - a2 - a3, d - a1 - a3, d - a1 - a2, *rest))


def cremona_reduce(c: SurfaceClass) -> SurfaceClass:
    """Standard form: sorted multiplicities with d >= a_1 + a_2 + a_3, by repeated Cremona moves."""
    current = c.sorted()
    while current.d > 0 and current.d < sum(current.a[:3]):
        moved = cremona_move(current).sorted()
        if (moved.degree, moved.genus) != (current.degree, current.genus):
            raise ArithmeticError(f"Cremona move changed the invariants of {current}")
        current = moved
    return current


def _multiplicities(total: int, parts: int, cap: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing tuples of ``parts`` values <= cap summing to total with sum C(a, 2) == budget."""
    if parts == 0:
        if total == 0 and budget == 0:
            yield ()
        return
    if total > parts * cap or budget < 0:
        return
    q, r = divmod(total, parts)
    if r * comb(q + 1, 2) + (parts - r) * comb(q, 2) > budget:
        return
    for x in range(min(cap, total), -1, -1):
        if x * parts < total:
            break
        for tail in _multiplicities(total - x, parts - 1, x, budget - comb(x, 2)):
            yield (x,) + tail


def cubic_class_solve(degree: int, genus: int) -> Set[SurfaceClass]:
    """
    Standard forms of the classes of given degree and genus meeting every line nonnegatively

    Enumerates d = 1..3*degree; any larger d forces a multiplicity sum above
    what the line conditions allow.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    found: Set[SurfaceClass] = set()
    for d in range(1, 3 * degree + 1):
        total = 3 * d - degree
        budget = (d - 1) * (d - 2) // 2 - genus
        if total < 0 or budget < 0:
            continue
        for a in _multiplicities(total, NPOINTS, d, budget):
            c = SurfaceClass(d, a)
            if meets_all_lines_nonnegatively(c):
                found.add(cremona_reduce(c))
    logger.debug(f"classes of degree {degree} and genus {genus}: {sorted(str(c) for c in found)}")
    return found