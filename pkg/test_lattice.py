#!/usr/bin/env python3
"""
Tests for the blow-up lattice: intersection numbers, Euler characteristics,
chambers, the flop, the cubic surface and the numerical identities
"""

from fractions import Fraction

import numpy as np
import pytest

from src.apps.verify import chamber_by_slope
from src.lattice import arithmetic, blowup, chambers, cubic_surface
from src.lattice.arithmetic import QuadForm, SurfaceLatticeClass
from src.lattice.blowup import ANTICANONICAL, CURVE_SPACE, E, H, BlowupP3, DivisorClass
from src.lattice.cubic_surface import SurfaceClass
from src.utils.errors import LatticeError

P = DivisorClass.parse


# divisor classes

@pytest.mark.parametrize("text,expected", [
    ("11H-3E", DivisorClass(11, 3)),
    ("H", H),
    ("E", E),
    ("-K", ANTICANONICAL),
    ("4H - E", DivisorClass(4, 1)),
    ("40H-11E", DivisorClass(40, 11)),
])
def test_parse_divisor_class(text, expected):
    assert P(text) == expected


def test_divisor_class_printing():
    assert str(DivisorClass(4, 1)) == "4H-E"
    assert str(E) == "E"
    assert str(DivisorClass(0, 0)) == "0"
    assert str(DivisorClass(-1, -2)) == "-H+2E"


def test_bad_divisor_class():
    with pytest.raises(LatticeError):
        P("2X")
    with pytest.raises(LatticeError):
        E.slope


# intersection numbers

def test_base_intersection_numbers():
    x = CURVE_SPACE
    assert x.triple(H, H, H) == 1
    assert x.triple(H, H, E) == 0
    assert x.triple(H, E, E) == -10
    assert x.triple(E, E, E) == 2 - 2 * 11 - 4 * 10


def test_recorded_identities_hold():
    for name, (computed, expected) in blowup.recorded_identities().items():
        assert computed == expected, name


def test_squares_of_the_flop_divisor():
    F = P("11H-3E")
    assert CURVE_SPACE.triple(F, F, H) == 31
    assert CURVE_SPACE.triple(F, F, E) == 120
    assert CURVE_SPACE.triple(F, F, F) == 11 * 31 - 3 * 120


def test_flip_anchors_follow_from_the_numerics():
    for name, (computed, expected) in blowup.flip_anchor_identities().items():
        assert computed == expected, name
    assert blowup.adjunction_canonical_degree(0, blowup.DIRECTRIX_NORMAL_DEGREE) == blowup.K_T_DOT_T
    assert blowup.adjunction_canonical_degree(1, 0) == -3
    assert blowup.resolution_degree(blowup.QUARTIC_RESOLUTION_SHAPE) == (2, 6)
    # 4 cubics with 3 linear syzygies in P^3 cut out the ACM sextic curve
    assert blowup.resolution_degree(blowup.QUARTIC_RESOLUTION_SHAPE, nvars=4) == (2, 6)
    assert blowup.resolution_degree(((-5, 4), (-4, 5)), nvars=4) == (2, 10)


def test_triple_product_is_symmetric():
    x = CURVE_SPACE
    a, b, c = P("3H-E"), P("11H-3E"), P("5H-2E")
    values = {x.triple(*p) for p in ((a, b, c), (b, c, a), (c, a, b), (b, a, c))}
    assert len(values) == 1


def test_secant_line_blowup_numbers():
    x = blowup.secant_line_blowup(4)
    el = x.exceptional("E_l")
    assert x.rank == 3
    assert x.triple(el, el, el) == 3
    assert x.triple(el, el, H) == -1
    assert x.triple(el, el, E) == -4
    assert x.triple(el, H, H) == 0
    assert x.canonical().coords == (-4, 1, 1)
    with pytest.raises(LatticeError):
        x.exceptional("E_m")


def test_classes_from_a_smaller_space_are_rejected():
    x = blowup.secant_line_blowup(4)
    with pytest.raises(LatticeError):
        CURVE_SPACE.triple(x.exceptional("E_l"), H, H)


# Euler characteristics

def test_chi_closed_values():
    assert blowup.chi_closed(0, 0) == 1
    assert blowup.chi_closed(1, 0) == 4
    assert blowup.chi_closed(4, 1) == 5


def test_chi_closed_needs_the_curve_space():
    with pytest.raises(LatticeError):
        blowup.chi_closed(1, 0, BlowupP3(4, 0))


def test_riemann_roch_agrees_with_the_closed_form():
    rr = blowup.RiemannRoch.fit()
    for n in range(-8, 9):
        for k in range(-8, 9):
            assert rr.chi(n, k) == blowup.chi_closed(n, k), (n, k)
    rng = np.random.default_rng(0)
    for n, k in rng.integers(-200, 201, size=(50, 2)):
        assert blowup.chi_hrr(int(n), int(k)) == blowup.chi_closed(int(n), int(k))


# flop

def test_flop_images():
    assert blowup.flop_pushforward(H) == P("11H-3E")
    assert blowup.flop_pushforward(E) == P("40H-11E")
    assert blowup.flop_pushforward(ANTICANONICAL) == ANTICANONICAL


def test_flop_is_an_involution():
    assert (blowup.FLOP_MATRIX @ blowup.FLOP_MATRIX == np.eye(2, dtype=np.int64)).all()
    for n in range(-5, 6):
        for k in range(-5, 6):
            D = DivisorClass(n, k)
            assert blowup.flop_pushforward(blowup.flop_pushforward(D)) == D


def test_splitting_criterion_values():
    F = P("11H-3E")
    assert blowup.splitting_criterion(F, 4) == -2
    assert blowup.splitting_criterion(F, 5) == -7


def test_curve_pairing():
    assert blowup.curve_pairing(P("11H-3E"), 10, 4) == 98
    assert blowup.curve_pairing(E, 0, -1) == 1


def test_contracted_residual_numbers():
    assert blowup.contracted_residual_numbers(1) == (5, 16)
    assert blowup.contracted_residual_numbers(5) == (1, 0)
    with pytest.raises(LatticeError):
        blowup.contracted_residual_numbers(6)


# chambers

def test_chamber_labels():
    generic = [c.label() for c in chambers.chambers("generic").chambers]
    assert generic == ["(H, E]", "[4H-E, H]", "[11H-3E, 4H-E)", "[40H-11E, 11H-3E)"]
    assert [c.label() for c in chambers.chambers("d1").chambers] == generic
    d2 = [c.label() for c in chambers.chambers("d2").chambers]
    assert d2 == ["(H, E]", "[5H-E, H]", "[4H-E, 5H-E)", "[3H-E, 4H-E)"]


def test_classify_interior_and_rays():
    record = chambers.classify("generic", P("6H-E"))
    assert record.model == "X"
    assert record.base_locus == "empty"
    assert chambers.classify("generic", P("4H-E")).model.startswith("Y in P^4")
    assert chambers.classify("generic", P("15H-4E")).base_locus.startswith("L")
    assert chambers.classify("generic", P("40H-11E")).model == "point"
    assert chambers.classify("generic", E).model == "point"
    assert chambers.classify("generic", H).model == "P^3"


def test_semicanonical_models():
    assert "2:1 cover" in chambers.classify("d1", ANTICANONICAL).model
    assert "involution" in chambers.classify("d1", P("15H-4E")).model


def test_cubic_surface_case():
    record = chambers.classify("d2", P("3H-E"))
    assert record.base_locus.startswith("S")
    assert record.model == "point"
    assert chambers.classify("d2", P("9H-2E")).base_locus.startswith("e1 + e2")


def test_classes_outside_the_effective_cone():
    with pytest.raises(LatticeError):
        chambers.classify("generic", P("3H-E"))
    with pytest.raises(LatticeError):
        chambers.classify("generic", P("-H"))
    with pytest.raises(LatticeError):
        chambers.classify("d2", P("5H-2E"))


def test_case_aliases_and_unknown_cases():
    assert chambers.chambers("ACM").case == "generic"
    assert chambers.chambers("D2-on-cubic").case == "d2"
    with pytest.raises(LatticeError):
        chambers.chambers("d3")


def test_classify_agrees_with_the_slope_comparison():
    for case in chambers.CASES:
        table = chambers.chambers(case)
        far = table.effective_cone[1]
        for n in range(0, 50):
            for k in range(-2 * n - 2, n * far.k // far.n + 3):
                D = DivisorClass(n, k)
                expected = chamber_by_slope(table, D)
                if expected is None:
                    with pytest.raises(LatticeError):
                        chambers.classify(case, D)
                else:
                    assert sum(c.contains(D) for c in table.chambers) == 1, (case, D)
                    assert chambers.classify(case, D).chamber == table.chambers[expected], (case, D)


def test_slope_comparison_on_the_e_side_and_the_walls():
    generic = chambers.chambers("generic")
    assert chamber_by_slope(generic, P("H+E")) == 0
    assert chamber_by_slope(generic, P("3E")) == 0
    assert chamber_by_slope(generic, H) == 1
    assert chamber_by_slope(generic, P("4H-E")) == 1
    assert chamber_by_slope(generic, P("11H-3E")) == 2
    assert chamber_by_slope(generic, P("40H-11E")) == 3
    assert chamber_by_slope(generic, P("3H-E")) is None
    assert chamber_by_slope(generic, P("-E")) is None
    assert chambers.classify("generic", P("H+E")).base_locus == "E"
    d2 = chambers.chambers("d2")
    assert chamber_by_slope(d2, P("5H-E")) == 1
    assert chamber_by_slope(d2, P("3H-E")) == 3


def test_cones():
    assert chambers.cones("generic")["movable"] == (P("11H-3E"), H)
    assert chambers.cones("d2")["nef"] == (P("5H-E"), H)
    assert chambers.cones("d1")["effective"] == (P("40H-11E"), E)


# cubic surface

def test_lines_on_the_cubic_surface():
    assert len(cubic_surface.LINES) == 27
    for line in cubic_surface.LINES.values():
        assert line.dot(line) == -1
        assert line.degree == 1
        assert cubic_surface.ANTICANONICAL.dot(line) == 1


def test_secant_tally_of_the_degree_ten_class():
    c = SurfaceClass(12, (5, 5, 4, 4, 4, 4))
    assert (c.degree, c.genus) == (10, 11)
    assert cubic_surface.cubic_secant_tally(c) == {5: 2, 4: 10, 3: 10, 2: 5}
    assert sum(cubic_surface.cubic_secant_tally(c).values()) == 27


def test_secancy_counts_name_the_five_secant_lines():
    counts = cubic_surface.secancy_counts(SurfaceClass(12, (5, 5, 4, 4, 4, 4)))
    assert len(counts) == 27
    assert counts[:2] == [("e1", 5), ("e2", 5)]
    assert counts[-1][1] == 2
    assert [v for _, v in counts] == sorted((v for _, v in counts), reverse=True)


def test_cremona_reduction_keeps_degree_and_genus():
    c = SurfaceClass(12, (5, 5, 4, 4, 4, 4))
    reduced = cubic_surface.cremona_reduce(c)
    assert str(reduced) == "(8; 3,3,2,2,2,2)"
    assert reduced.is_standard()
    assert (reduced.degree, reduced.genus) == (10, 11)
    assert cubic_surface.cubic_secant_tally(reduced) == cubic_surface.cubic_secant_tally(c)


def test_cubic_class_solve():
    assert cubic_surface.cubic_class_solve(10, 11) == {cubic_surface.cremona_reduce(SurfaceClass(12, (5, 5, 4, 4, 4, 4)))}
    assert cubic_surface.cubic_class_solve(3, 0) == {SurfaceClass(1, (0,) * 6)}
    assert cubic_surface.cremona_reduce(SurfaceClass(2, (1, 1, 1, 0, 0, 0))) == SurfaceClass(1, (0,) * 6)
    assert SurfaceClass(2, (1, 1, 0, 0, 0, 0)) in cubic_surface.cubic_class_solve(4, 0)


def test_surface_class_parsing():
    assert SurfaceClass.parse("12;5,5,4,4,4,4") == SurfaceClass.parse("12,5,5,4,4,4,4")
    with pytest.raises(ValueError):
        SurfaceClass.parse("3,1,1")


# numerical identities

def test_quadrisecant_counts():
    assert arithmetic.quadrisecant_count(10, 11) == 20
    assert arithmetic.quadrisecant_count(4, 0) == 0
    assert arithmetic.quadrisecant_count(4, 1) == 0
    assert arithmetic.quadrisecant_count(6, 3) == 0
    with pytest.raises(LatticeError):
        arithmetic.quadrisecant_count(3, 0)


def test_small_formulas():
    assert arithmetic.defect(20, 16) == 1
    assert arithmetic.riemann_hurwitz(3, 11, 80) == 71
    assert arithmetic.liaison_genus(6, 3, 4, 4, 10) == 11
    assert arithmetic.liaison_genus(10, 11, 4, 4, 6) == 3
    assert arithmetic.k3_adjunction_genus(70) == 36
    with pytest.raises(LatticeError):
        arithmetic.riemann_hurwitz(1, 0, 1)
    with pytest.raises(ValueError):
        arithmetic.defect(-1, 3)


def test_restriction_lattice_products():
    h, e = arithmetic.H_RESTRICTED, arithmetic.E_RESTRICTED
    assert arithmetic.surface_product(h, h) == 11
    assert arithmetic.surface_product(e, e) == 70
    assert arithmetic.surface_product(h, e) == 30
    assert arithmetic.surface_product(arithmetic.K_SURFACE, arithmetic.K_SURFACE) == -21
    minus_k = arithmetic.k3_restriction(ANTICANONICAL)
    assert arithmetic.surface_product(minus_k, minus_k) == 6


def test_restriction_report():
    report = arithmetic.restriction_report()
    assert report.consistent
    assert report.pairs["H.H"] == (11, 11)
    assert report.pairs["E.E"] == (70, 70)
    assert report.genus == {"k3_adjunction": 36, "surface_adjunction": 71, "riemann_hurwitz": 71}
    assert report.genus_discrepancy
    assert not arithmetic.restriction_report(arithmetic.H_RESTRICTED_VARIANT).consistent


def test_canonical_square_from_the_ambient_space():
    adjoint = DivisorClass(7, 2)
    assert CURVE_SPACE.triple(adjoint, adjoint, arithmetic.FLOP_SURFACE) == -21


def test_surface_lattice_class_vector():
    v = SurfaceLatticeClass(11, 1, 3).vector()
    assert len(v) == 31
    assert v[0] == 11 and v[1] == -1 and v[-1] == -3


# quadratic forms

def test_hilbert_symbols():
    assert arithmetic.hilbert_symbol(5, 2, 5) == -1
    assert arithmetic.hilbert_symbol(5, 2, 2) == -1
    assert arithmetic.hilbert_symbol(5, 2, "inf") == 1
    assert arithmetic.hilbert_symbol(-1, -1, "inf") == -1
    assert arithmetic.hilbert_symbol(-1, 2, 2) == 1


def test_first_exclusion_form_has_local_obstructions():
    result = arithmetic.rational_exclusion(QuadForm(2, 20, 10, 1))
    assert result.verdict == "unsolvable"
    assert result.obstruction == [2, 5]


def test_second_exclusion_form_has_only_the_trivial_zero():
    result = arithmetic.rational_exclusion(QuadForm(1, 10, 5, 0))
    assert result.verdict == "unsolvable"
    assert QuadForm(1, 10, 5, 0).discriminant == 80


def test_control_form_is_solvable():
    result = arithmetic.rational_exclusion(QuadForm(1, 0, -1, 0))
    assert result.verdict == "solvable"
    assert result.witness == (Fraction(1), Fraction(1))


@pytest.mark.parametrize("form", [
    QuadForm(1, 0, -1, 3),
    QuadForm(1, 0, 1, 2),
    QuadForm(0, 0, 2, 8),
    QuadForm(0, 3, 0, 6),
    QuadForm(1, 2, 1, 4),
])
def test_witnesses_solve_the_equation(form):
    result = arithmetic.rational_exclusion(form)
    assert result.solvable is True
    assert form.evaluate(*result.witness) == form.target


def test_sum_of_two_squares_misses_three():
    result = arithmetic.rational_exclusion(QuadForm(1, 0, 1, 3))
    assert result.verdict == "unsolvable"
    assert 3 in result.obstruction


def test_exclusion_json():
    data = arithmetic.rational_exclusion(QuadForm(2, 20, 10, 1)).to_json()
    assert data["verdict"] == "unsolvable"
    assert data["obstruction"] == ["2", "5"]
    assert data["witness"] is None


if __name__ == "__main__":
    pytest.main([__file__])
