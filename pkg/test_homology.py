#!/usr/bin/env python3
"""
Tests for graded homology: Betti tables, explicit resolutions, cohomology
tables, Hartshorne-Rao modules, the classifier and the liaison identities
"""

import numpy as np
import pytest

from src.apps.recipes import CurveRecipe, build_curve
from src.core.field import CoefficientField
from src.core.ideal import Ideal, change_coordinates, graded_piece_dim, intersect, linked_ideal, saturate_ideal
from src.core.linalg import rank
from src.core.ring import PolyRing
from src.homology.classifier import (ACM, D1, D2, OTHER, RESIDUAL_CASES, RESIDUAL_FAMILY, classify_curve,
                                     liaison_identity_report, residual_hr_case, verify_curve_preconditions)
from src.homology.cohomology import HRModule, canonical_module_dim, curve_cohomology, hartshorne_rao
from src.homology.resolution import (BettiTable, generated_in_degree, minimal_resolution,
                                     minimal_resolution_betti)
from src.utils.errors import NotACurveError, PreconditionError, ResourceBudgetError

GF = CoefficientField.prime_field(32003)


@pytest.fixture
def ring():
    return PolyRing(GF, ("x", "y", "z", "w"))


@pytest.fixture
def twisted_cubic(ring):
    return Ideal.from_strings(ring, ["x*z - y^2", "x*w - y*z", "y*w - z^2"], "twisted cubic")


@pytest.fixture
def skew_lines(ring):
    return intersect(Ideal.from_strings(ring, ["x", "y"]), Ideal.from_strings(ring, ["z", "w"]))


# Betti tables

def test_betti_table_of_the_twisted_cubic(twisted_cubic):
    betti = minimal_resolution_betti(twisted_cubic)
    assert betti.to_json() == {"0,0": 1, "1,2": 3, "2,3": 2}
    assert betti.regularity == 1
    assert betti.length == 2
    assert betti.shifts(1) == [2, 2, 2]
    assert betti.numerator() == tuple(twisted_cubic.hilbert().numerator)


def test_betti_table_of_two_skew_lines(skew_lines):
    betti = minimal_resolution_betti(skew_lines)
    assert betti.to_json() == {"0,0": 1, "1,2": 4, "2,3": 4, "3,4": 1}
    assert betti.totals() == [1, 4, 4, 1]


def test_betti_table_layout():
    betti = BettiTable.from_json({"0,0": 1, "1,4": 5, "2,5": 4})
    assert betti[(1, 4)] == 5
    assert betti[(2, 6)] == 0
    assert betti.table().tolist() == [[1, 0, 0], [0, 0, 0], [0, 0, 0], [0, 5, 4]]
    assert "total:" in str(betti)


def test_betti_degree_cap(twisted_cubic):
    with pytest.raises(ResourceBudgetError):
        minimal_resolution_betti(twisted_cubic, max_degree=2)


def test_generated_in_degree(twisted_cubic, ring):
    assert generated_in_degree(twisted_cubic) == 2
    assert generated_in_degree(Ideal.from_strings(ring, ["x", "y^3"])) == 3


def test_explicit_resolution_matches_koszul_homology(twisted_cubic, skew_lines):
    resolution = minimal_resolution(twisted_cubic)
    assert resolution.degrees == [[0], [2, 2, 2], [3, 3]]
    assert minimal_resolution(twisted_cubic).betti() == minimal_resolution_betti(twisted_cubic)
    assert minimal_resolution(skew_lines).betti() == minimal_resolution_betti(skew_lines)


def test_resolution_maps_compose_to_zero(twisted_cubic):
    resolution = minimal_resolution(twisted_cubic)
    generators, syzygies = resolution.maps[0], resolution.maps[1]
    for syzygy in syzygies:
        total = twisted_cubic.ring.zero()
        for coeff, row in zip(syzygy, generators):
            total = total + coeff * row[0]
        assert total.is_zero()


# cohomology

def test_canonical_module_of_the_twisted_cubic(twisted_cubic):
    assert canonical_module_dim(twisted_cubic, 0) == 0
    assert canonical_module_dim(twisted_cubic, 1) == 2


def test_cohomology_table_of_the_twisted_cubic(twisted_cubic):
    table = curve_cohomology(twisted_cubic, (-5, 5))
    assert table.h(0, 2) == 3
    assert table.h(2, -1) == 2
    assert table.h(3, -4) == 1
    assert table.aux[1] == (4, 0)
    assert all(table.h(1, k) == 0 for k in table.twists())
    assert all(table.euler(k) == table.expected_euler(k) for k in table.twists())
    frame = table.to_frame()
    assert list(frame.columns) == ["h0", "h1", "h2", "h3", "h0(O_C)", "h1(O_C)"]


def test_cohomology_table_json(twisted_cubic):
    data = curve_cohomology(twisted_cubic, (0, 2)).to_json()
    assert data["window"] == [0, 2]
    assert data["h"]["0,2"] == 3
    with pytest.raises(KeyError):
        curve_cohomology(twisted_cubic, (0, 2)).h(0, 7)


def test_window_widens_until_h1_vanishes_at_both_ends(skew_lines):
    table = curve_cohomology(skew_lines, (0, 5))
    assert table.window == (-4, 5)
    assert table.h(1, 0) == 1
    uncertified = curve_cohomology(skew_lines, (0, 5), certify=False)
    assert uncertified.window == (0, 5)


def test_skew_lines_euler_characteristic(skew_lines):
    table = curve_cohomology(skew_lines, (-6, 6))
    assert all(table.euler(k) == table.expected_euler(k) for k in table.twists())


def test_hartshorne_rao_modules(twisted_cubic, skew_lines):
    assert hartshorne_rao(twisted_cubic).is_zero
    module = hartshorne_rao(skew_lines)
    assert module.dims == {0: 1}
    assert module.is_field_in_degree(0)
    assert module.describe() == "K(0)"


def test_hr_module_helpers():
    module = HRModule({2: 1, 3: 0})
    assert module.dims == {2: 1}
    assert module.describe() == "K(-2)"
    assert HRModule({1: 1, 2: 2}).length == 3
    assert HRModule({}).describe() == "0"


def test_cohomology_needs_a_space_curve(ring):
    points = Ideal.from_strings(ring, ["y", "z", "x*w*(x - w)"])
    with pytest.raises(NotACurveError):
        hartshorne_rao(points)
    plane = PolyRing(GF, ("x", "y", "z"))
    with pytest.raises(NotACurveError):
        curve_cohomology(Ideal.from_strings(plane, ["x*y - z^2"]))


# classifier

def test_classifier_on_small_curves(twisted_cubic, skew_lines):
    assert classify_curve(twisted_cubic, verify=False).tag == ACM
    assert classify_curve(skew_lines, verify=False).tag == OTHER


def test_classifier_checks_the_invariants(twisted_cubic):
    with pytest.raises(PreconditionError, match="degree, genus"):
        verify_curve_preconditions(twisted_cubic)
    with pytest.raises(PreconditionError):
        classify_curve(twisted_cubic)


def _substitutions(count, seed=0):
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        matrix = [[int(v) for v in row] for row in rng.integers(0, 7, size=(4, 4))]
        if rank(matrix, 4, GF) == 4:
            found.append(matrix)
    return found


def test_classifier_ignores_linear_coordinate_changes(twisted_cubic, skew_lines):
    for curve, tag in ((twisted_cubic, ACM), (skew_lines, OTHER)):
        for matrix in _substitutions(5):
            assert classify_curve(change_coordinates(curve, matrix), verify=False).tag == tag


def test_twisted_cubic_euler_characteristic(twisted_cubic):
    table = curve_cohomology(twisted_cubic, (-6, 6))
    for k in range(-6, 7):
        assert table.euler(k) == table.expected_euler(k), k


def test_residual_case_table():
    assert RESIDUAL_CASES[1] == {}
    assert RESIDUAL_FAMILY[2] == D1 and RESIDUAL_CASES[2] == {2: 1}
    assert RESIDUAL_FAMILY[3] == D2 and RESIDUAL_CASES[3] == {1: 1}
    assert sum(RESIDUAL_CASES[5].values()) == 21


def test_liaison_helpers_check_their_input(ring, twisted_cubic):
    f, g = ring.parse("x*z - y^2"), ring.parse("y*w - z^2")
    with pytest.raises(PreconditionError):
        liaison_identity_report(twisted_cubic, f, g, 2)
    with pytest.raises(PreconditionError):
        residual_hr_case(twisted_cubic, f, g)


# degree-10 genus-11 curves

@pytest.fixture(scope="module")
def curves():
    """Curve ideals built once per module, by recipe kind."""
    return {}


def _curve(curves, kind):
    if kind not in curves:
        curves[kind] = build_curve(CurveRecipe(kind, seed=0)).ideal
    return curves[kind]


def _quartics(i, seed=0):
    rng = np.random.default_rng(seed)
    piece = i.graded_piece(4)
    pick = []
    for _ in range(2):
        total = i.ring.zero()
        for p in piece:
            total = total + p.scale(i.ring.field.random_element(rng))
        pick.append(total)
    return pick


@pytest.mark.slow
def test_semicanonical_curve(curves):
    i = _curve(curves, "d1")
    verify_curve_preconditions(i)
    assert hartshorne_rao(i).dims == {2: 1}
    assert canonical_module_dim(i, -2) == 1
    assert classify_curve(i, verify=False).tag == D1
    assert curve_cohomology(i, (2, 2), certify=False).aux[2][0] == 11
    assert generated_in_degree(i) == 4
    assert graded_piece_dim(i, 4) == 5


@pytest.mark.slow
def test_acm_curve(curves):
    i = _curve(curves, "acm")
    assert hartshorne_rao(i).is_zero
    assert classify_curve(i).tag == ACM
    assert minimal_resolution_betti(i).to_json() == {"0,0": 1, "1,4": 5, "2,5": 4}
    assert graded_piece_dim(i, 3) == 0


@pytest.mark.slow
def test_acm_residual_is_an_acm_sextic(curves):
    i = _curve(curves, "acm")
    f, g = _quartics(i)
    case = residual_hr_case(i, f, g)
    assert case.case == 1
    assert case.family == ACM


@pytest.mark.slow
def test_liaison_decomposition_holds(curves):
    i = _curve(curves, "acm")
    f, g = _quartics(i)
    for m in range(0, 7):
        record = liaison_identity_report(i, f, g, m)
        assert record.verified_holds, m


@pytest.mark.slow
def test_curve_on_a_cubic(curves):
    i = _curve(curves, "d2")
    assert hartshorne_rao(i).dims == {3: 1}
    assert graded_piece_dim(i, 3) == 1
    assert classify_curve(i, verify=False).tag == D2
    assert generated_in_degree(i) == 5


@pytest.mark.slow
@pytest.mark.parametrize("kind, tag", [("d1", D1), ("acm", ACM), ("d2", D2)])
def test_curve_class_survives_coordinate_changes(curves, kind, tag):
    i = _curve(curves, kind)
    for matrix in _substitutions(5, seed=1):
        assert classify_curve(change_coordinates(i, matrix), verify=False).tag == tag


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["d1", "acm", "d2"])
def test_curve_euler_characteristic(curves, kind):
    table = curve_cohomology(_curve(curves, kind), (-2, 8), certify=False)
    for k in table.twists():
        assert table.euler(k) == table.expected_euler(k), k


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["d1", "acm", "d2"])
def test_curve_ideals_are_saturated(curves, kind):
    i = _curve(curves, kind)
    once = saturate_ideal(i)
    assert once == i
    assert saturate_ideal(once) == once


@pytest.mark.slow
def test_linked_degrees_add_up(curves):
    i = _curve(curves, "acm")
    f, g = _quartics(i)
    residual = linked_ideal(i, f, g)
    assert i.hilbert().degree + residual.hilbert().degree == f.degree() * g.degree() == 16


if __name__ == "__main__":
    pytest.main([__file__])
