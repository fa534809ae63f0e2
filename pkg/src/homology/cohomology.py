"""
Curve Cohomology
Twisted ideal-sheaf cohomology of space curves from the Hilbert function and
the graded canonical module, and the Hartshorne-Rao module
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

import pandas as pd

from src.core.ideal import Ideal, graded_piece_dim
from src.homology.resolution import minimal_resolution
from src.utils.config import get_config
from src.utils.errors import NotACurveError, WindowBoundaryError

logger = logging.getLogger(__name__)

WIDEN_STEP = 4
MAX_WIDENINGS = 3


@dataclass
class CohomologyTable:
    """
    h^i(I_C(k)) for i = 0..3 and k in a window

    Attributes:
        window: inclusive degree range (lo, hi)
        degree: degree d of the curve
        genus: arithmetic genus g
        values: (i, k) -> h^i(I_C(k))
        aux: k -> (h^0(O_C(k)), h^1(O_C(k)))
    """
    window: Tuple[int, int]
    degree: int
    genus: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)
    aux: Dict[int, Tuple[int, int]] = field(default_factory=dict)

    def h(self, i: int, k: int) -> int:
        if (i, k) not in self.values:
            raise KeyError(f"twist {k} is outside the computed window {self.window}")
        return self.values[(i, k)]

    def twists(self) -> List[int]:
        return list(range(self.window[0], self.window[1] + 1))

    def row(self, i: int) -> Dict[int, int]:
        return {k: self.values[(i, k)] for k in self.twists()}

    def euler(self, k: int) -> int:
        return sum((-1) ** i * self.h(i, k) for i in range(4))

    def expected_euler(self, k: int) -> int:
        """chi(I_C(k)) = C(k+3, 3) - (dk + 1 - g), with C(k+3, 3) read as a polynomial in k."""
        ambient = (k + 3) * (k + 2) * (k + 1) // 6
        return ambient - (self.degree * k + 1 - self.genus)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({f"h{i}": [self.values[(i, k)] for k in self.twists()] for i in range(4)},
                             index=self.twists())
        frame.index.name = "k"
        frame["h0(O_C)"] = [self.aux[k][0] for k in self.twists()]
        frame["h1(O_C)"] = [self.aux[k][1] for k in self.twists()]
        return frame

    def to_json(self) -> Dict:
        return {
            "window": list(self.window),
            "degree": self.degree,
            "genus": self.genus,
            "h": {f"{i},{k}": v for (i, k), v in sorted(self.values.items())},
            "aux": {str(k): list(v) for k, v in sorted(self.aux.items())},
        }

    def __str__(self) -> str:
        return self.to_frame().to_string()


@dataclass
class HRModule:
    """Hartshorne-Rao module M = sum_k H^1(I_C(k)) by graded dimensions."""
    dims: Dict[int, int]

    def __post_init__(self):
        self.dims = {k: v for k, v in sorted(self.dims.items()) if v}

    @property
    def length(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def is_field_in_degree(self, k: int) -> bool:
        """True iff M is one-dimensional and sits in degree k, the shape of K(-k)."""
        return self.dims == {k: 1}

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        if len(self.dims) == 1 and self.length == 1:
            k = next(iter(self.dims))
            return f"K({-k})"
        return " + ".join(f"{v}@{k}" for k, v in self.dims.items())

    def to_json(self) -> Dict:
        return {"dims": {str(k): v for k, v in self.dims.items()}, "length": self.length}


def _check_space_curve(i: Ideal) -> Tuple[int, int]:
    if i.ring.nvars != 4:
        raise NotACurveError(f"curve cohomology needs an ideal in P^3, got {i.ring.nvars} variables")
    data = i.hilbert()
    if data.projective_dim != 1:
        raise NotACurveError(f"the ideal defines a scheme of dimension {data.projective_dim}, not a curve")
    return data.degree, data.genus


def canonical_module_dim(i: Ideal, e: int) -> int:
    """dim W_e for W = Ext^2(R/I, R(-4)), the graded canonical module of the curve."""
    _check_space_curve(i)
    return minimal_resolution(i).ext_dimension(2, e - 4)


def _fill(i: Ideal, table: CohomologyTable, twists) -> None:
    data = i.hilbert()
    resolution = minimal_resolution(i)
    d, g = table.degree, table.genus
    for k in twists:
        if (0, k) in table.values:
            continue
        w = resolution.ext_dimension(2, -k - 4)
        hf = data.hilbert_function(k)
        h0_oc = d * k + 1 - g + w
        table.values[(0, k)] = graded_piece_dim(i, k)
        table.values[(1, k)] = h0_oc - hf
        table.values[(2, k)] = w
        table.values[(3, k)] = comb(-k - 1, 3) if k <= -4 else 0
        table.aux[k] = (h0_oc, w)


def curve_cohomology(i: Ideal, window: Optional[Tuple[int, int]] = None, certify: bool = True) -> CohomologyTable:
    """
    Cohomology table of the ideal sheaf of a space curve

    h^0(O_C(k)) = dk + 1 - g + dim W_{-k} by Riemann-Roch and duality, and
    h^1(I_C(k)) = h^0(O_C(k)) - HF(R/I, k) for a saturated ideal.

    Args:
        i: saturated ideal of a curve in P^3
        window: inclusive twist range (default from configuration)
        certify: widen the window until h^1 vanishes at both ends

    Raises:
        NotACurveError: the ideal does not define a curve in P^3
        WindowBoundaryError: h^1 is still nonzero at an end after widening
    """
    d, g = _check_space_curve(i)
    lo, hi = window if window is not None else get_config().window
    table = CohomologyTable((lo, hi), d, g)
    _fill(i, table, range(lo, hi + 1))
    if certify:
        for _ in range(MAX_WIDENINGS):
            touches_lo = table.values[(1, lo)] != 0
            touches_hi = table.values[(1, hi)] != 0
            if not (touches_lo or touches_hi):
                break
            lo = lo - WIDEN_STEP if touches_lo else lo
            hi = hi + WIDEN_STEP if touches_hi else hi
            logger.info(f"⚠️ h^1 reaches the window boundary, widening to [{lo}, {hi}]")
            _fill(i, table, range(lo, hi + 1))
            table.window = (lo, hi)
        else:
            if table.values[(1, lo)] or table.values[(1, hi)]:
                raise WindowBoundaryError(f"h^1(I_C(k)) is nonzero at the boundary of [{lo}, {hi}]")
    logger.debug(f"cohomology of {i!r} on [{lo}, {hi}] computed")
    return table


def hartshorne_rao(i: Ideal, window: Optional[Tuple[int, int]] = None) -> HRModule:
    """Hartshorne-Rao module with support certified inside the window."""
    cached = i.derived.get("hartshorne_rao")
    if cached is not None and window is None:
        return cached
    table = curve_cohomology(i, window, certify=True)
    module = HRModule(table.row(1))
    logger.info(f"✅ Hartshorne-Rao module of {i!r}: {module.describe()}")
    if window is None:
        i.derived["hartshorne_rao"] = module
    return module
