"""
Curve Classifier
Sorts smooth connected degree-10 genus-11 space curves into the ACM, D1 and D2
families by their Hartshorne-Rao modules, and reports the liaison dimension
identities between a curve and its residual sextic
"""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from src.core.ideal import Ideal, connectedness_h1, graded_piece_dim, linked_ideal, singular_locus_smooth
from src.core.polynomial import Polynomial
from src.homology.cohomology import HRModule, canonical_module_dim, curve_cohomology, hartshorne_rao
from src.utils.errors import PreconditionError

logger = logging.getLogger(__name__)

ACM = "ACM"
D1 = "D1-semicanonical"
D2 = "D2-on-cubic"
OTHER = "Other"

CURVE_DEGREE = 10
CURVE_GENUS = 11


@dataclass
class CurveClass:
    """
    Classification verdict with its evidence

    Attributes:
        tag: ACM, D1-semicanonical, D2-on-cubic or Other
        hr: the Hartshorne-Rao module
        evidence: the discriminating scalars (h0(omega(-2)) for D1, h0(I(3)) for D2)
    """
    tag: str
    hr: HRModule
    evidence: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> Dict:
        return {"tag": self.tag, "hr": self.hr.to_json(), "evidence": dict(self.evidence)}


def verify_curve_preconditions(i: Ideal) -> None:
    """
    Raises:
        PreconditionError: naming the first failing invariant among
            (degree, genus), smoothness and connectedness
    """
    data = i.hilbert()
    if data.projective_dim != 1:
        raise PreconditionError(f"dimension: expected a curve, got projective dimension {data.projective_dim}")
    if (data.degree, data.genus) != (CURVE_DEGREE, CURVE_GENUS):
        raise PreconditionError(f"(degree, genus): expected ({CURVE_DEGREE}, {CURVE_GENUS}), "
                                f"got ({data.degree}, {data.genus})")
    if not singular_locus_smooth(i, 2).smooth:
        raise PreconditionError("smoothness: the Jacobian criterion finds singular points")
    if connectedness_h1(i) != 0:
        raise PreconditionError("connectedness: h^1(I_C) != 0")


def classify_curve(i: Ideal, verify: bool = True) -> CurveClass:
    """
    ACM iff HR = 0; D1 iff HR = K(-2) and h0(omega_C(-2)) = 1;
    D2 iff HR = K(-3) and h0(I_C(3)) = 1; Other otherwise

    Args:
        i: saturated ideal of the curve
        verify: check (degree, genus), smoothness and connectedness first
    """
    if verify:
        verify_curve_preconditions(i)
    hr = hartshorne_rao(i)
    if hr.is_zero:
        verdict = CurveClass(ACM, hr)
    elif hr.is_field_in_degree(2):
        w = canonical_module_dim(i, -2)
        verdict = CurveClass(D1 if w == 1 else OTHER, hr, {"h0_omega_minus_2": w})
    elif hr.is_field_in_degree(3):
        cubics = graded_piece_dim(i, 3)
        verdict = CurveClass(D2 if cubics == 1 else OTHER, hr, {"h0_I_3": cubics})
    else:
        verdict = CurveClass(OTHER, hr)
    if verdict.tag == OTHER:
        logger.warning(f"⚠️ {i!r} does not fall in ACM, D1 or D2: HR = {hr.describe()}")
    else:
        logger.info(f"✅ {i!r} classified as {verdict.tag}")
    return verdict


# liaison


@dataclass
class LiaisonIdentityRecord:
    """Both sides of the liaison dimension identities at twist m."""
    m: int
    h0_curve: int
    h0_residual: int
    h1_residual: int
    h2_residual: int
    cubic_term: Fraction
    printed_rhs: Fraction
    printed_holds: bool
    h0_complete_intersection: int
    residual_canonical: int
    verified_holds: bool

    def to_json(self) -> Dict:
        data = asdict(self)
        data["cubic_term"] = str(self.cubic_term)
        data["printed_rhs"] = str(self.printed_rhs)
        return data


def residual_ideal(i: Ideal, f: Polynomial, g: Polynomial) -> Ideal:
    """(<f, g> : I), memoized on I per pair of linking forms."""
    key = ("residual", str(f), str(g))
    if key not in i.derived:
        i.derived[key] = linked_ideal(i, f, g)
    return i.derived[key]


def liaison_identity_report(i: Ideal, f: Polynomial, g: Polynomial, m: int) -> LiaisonIdentityRecord:
    """
    Compare h0(I_C(m)) with the printed identity
    h1(I_C'(4-m)) - h0(I_C'(4-m)) + (m-3)(m-2)(m+2)/6 and with the
    decomposition h0(I_C(m)) = h0(I_X(m)) + dim W'_{m-4}, X = V(f, g)

    The printed identity is reported; only the decomposition is asserted
    by callers.
    """
    if f.degree() != 4 or g.degree() != 4:
        raise PreconditionError("liaison by quartics: f and g must have degree 4")
    residual = residual_ideal(i, f, g)
    twist = 4 - m
    table = curve_cohomology(residual, (twist, twist), certify=False)
    ci = Ideal(i.ring, [f, g], "complete intersection")
    cubic = Fraction((m - 3) * (m - 2) * (m + 2), 6)
    printed = table.h(1, twist) - table.h(0, twist) + cubic
    h0_curve = graded_piece_dim(i, m)
    h0_ci = graded_piece_dim(ci, m)
    w = canonical_module_dim(residual, m - 4)
    record = LiaisonIdentityRecord(
        m=m,
        h0_curve=h0_curve,
        h0_residual=table.h(0, twist),
        h1_residual=table.h(1, twist),
        h2_residual=table.h(2, twist),
        cubic_term=cubic,
        printed_rhs=printed,
        printed_holds=printed == h0_curve,
        h0_complete_intersection=h0_ci,
        residual_canonical=w,
        verified_holds=h0_curve == h0_ci + w,
    )
    if not record.printed_holds:
        logger.debug(f"printed liaison identity differs at m={m}: {h0_curve} vs {printed}")
    return record


# residual shapes of the degree-6 genus-3 curves linked by two quartics

RESIDUAL_CASES: Dict[int, Dict[int, int]] = {
    1: {},
    # linkage by two quartics sends degree k of HR(C) to degree 4 - k of HR(C')
    2: {2: 1},
    3: {1: 1},
    4: {1: 1, 2: 1, 3: 1},
    # K[z,w]/(F, G) with deg F = 3, deg G = 7, shifted by 2
    5: {2: 1, 3: 2, 4: 3, 5: 3, 6: 3, 7: 3, 8: 3, 9: 2, 10: 1},
}

RESIDUAL_FAMILY = {1: ACM, 2: D1, 3: D2, 4: "excluded", 5: "excluded"}


@dataclass
class ResidualCase:
    case: Optional[int]
    hr: HRModule
    family: str

    def to_json(self) -> Dict:
        return {"case": self.case, "hr": self.hr.to_json(), "family": self.family}


def residual_hr_case(i: Ideal, f: Polynomial, g: Polynomial) -> ResidualCase:
    """Which Hartshorne-Rao shape the residual sextic of (f, g) shows, by its h^1 dimensions."""
    residual = residual_ideal(i, f, g)
    data = residual.hilbert()
    if (data.degree, data.genus) != (6, 3):
        raise PreconditionError(f"residual has (degree, genus) = ({data.degree}, {data.genus}), expected (6, 3)")
    hr = hartshorne_rao(residual)
    for case, dims in RESIDUAL_CASES.items():
        if hr.dims == dims:
            return ResidualCase(case, hr, RESIDUAL_FAMILY[case])
    return ResidualCase(None, hr, OTHER)
