#!/usr/bin/env python3
"""
Tests for ideal operations: intersection, quotients, saturation,
elimination, liaison, smoothness and connectedness
"""

import numpy as np
import pytest

from src.core.field import CoefficientField
from src.core.ideal import (Ideal, change_coordinates, connectedness_h1, eliminate, graded_piece_dim, intersect,
                            linked_ideal, power_saturated, quotient, saturate_ideal, singular_locus_smooth)
from src.core.ring import PolyRing
from src.utils.errors import LiaisonError, RingMismatchError

GF = CoefficientField.prime_field(32003)


@pytest.fixture
def ring():
    return PolyRing(GF, ("x", "y", "z", "w"))


def ideal(r, *gens):
    return Ideal.from_strings(r, list(gens))


@pytest.fixture
def twisted_cubic(ring):
    return ideal(ring, "x*z - y^2", "x*w - y*z", "y*w - z^2")


@pytest.fixture
def skew_lines(ring):
    return intersect(ideal(ring, "x", "y"), ideal(ring, "z", "w"))


def test_sum_product_and_equality(ring):
    assert ideal(ring, "x") + ideal(ring, "y") == ideal(ring, "x", "y")
    assert ideal(ring, "x") * ideal(ring, "y") == ideal(ring, "x*y")
    assert ideal(ring, "x", "y").power(2) == ideal(ring, "x^2", "x*y", "y^2")
    assert ideal(ring, "x") != ideal(ring, "y")


def test_subset(ring, twisted_cubic):
    assert twisted_cubic.is_subset(ideal(ring, "x", "y", "z"))
    assert not ideal(ring, "x").is_subset(twisted_cubic)


def test_intersection(ring):
    assert intersect(ideal(ring, "x"), ideal(ring, "y")) == ideal(ring, "x*y")
    meet = intersect(ideal(ring, "x", "y"), ideal(ring, "x", "z"))
    assert meet == ideal(ring, "x", "y*z")


def test_intersection_of_skew_lines(skew_lines, ring):
    assert skew_lines == ideal(ring, "x*z", "x*w", "y*z", "y*w")
    data = skew_lines.hilbert()
    assert (data.degree, data.genus) == (2, -1)


def test_intersection_needs_one_ring(ring):
    other = PolyRing(CoefficientField.prime_field(101), ("x", "y", "z", "w"))
    with pytest.raises(RingMismatchError):
        intersect(ideal(ring, "x"), ideal(other, "x"))


def test_quotients(ring):
    embedded = ideal(ring, "x^2", "x*y", "x*z", "x*w")
    assert quotient(embedded, ring.gen("x")) == Ideal.irrelevant(ring)
    assert quotient(embedded) == ideal(ring, "x")
    assert quotient(ideal(ring, "x"), ring.gen("x")).is_unit


def test_saturation_removes_the_embedded_point(ring):
    embedded = ideal(ring, "x^2", "x*y", "x*z", "x*w")
    assert saturate_ideal(embedded) == ideal(ring, "x")
    assert quotient(embedded, saturate=True) == ideal(ring, "x")


def test_saturation_by_a_form(ring):
    i = ideal(ring, "x*y^2", "x*y*z")
    assert saturate_ideal(i, ideal(ring, "y")) == ideal(ring, "x")


def test_saturated_ideals_are_fixed(twisted_cubic):
    assert saturate_ideal(twisted_cubic) == twisted_cubic


def _combination(forms, rng):
    total = forms[0].ring.zero()
    for form in forms:
        total = total + form.scale(GF.random_element(rng))
    return total


def test_saturation_is_idempotent(ring, twisted_cubic, skew_lines):
    irrelevant = Ideal.irrelevant(ring)
    cases = [
        (twisted_cubic * irrelevant, twisted_cubic),
        (skew_lines * irrelevant.power(2), skew_lines),
        (intersect(twisted_cubic, ideal(ring, "x", "y", "z").power(2)), twisted_cubic),
        (ideal(ring, "x^2", "x*y", "x*z", "x*w"), ideal(ring, "x")),
    ]
    for i, expected in cases:
        once = saturate_ideal(i)
        assert once == expected
        assert saturate_ideal(once) == once


def test_liaison_degrees_add_up(twisted_cubic, skew_lines):
    rng = np.random.default_rng(5)
    for curve in (twisted_cubic, skew_lines):
        quadrics = curve.graded_piece(2)
        for _ in range(3):
            f, g = _combination(quadrics, rng), _combination(quadrics, rng)
            residual = linked_ideal(curve, f, g)
            assert curve.hilbert().degree + residual.hilbert().degree == f.degree() * g.degree()


def test_saturating_a_primary_ideal_gives_the_unit_ideal(ring):
    assert saturate_ideal(ideal(ring, "x^2", "y", "z", "w")).is_unit


def test_elimination():
    r = PolyRing(GF, ("x", "y", "z"))
    sub = eliminate(Ideal.from_strings(r, ["x - y", "y - z"]), ["y"])
    assert sub.ring.variables == ("x", "z")
    assert sub == Ideal.from_strings(sub.ring, ["x - z"])


def test_projection_from_a_point_of_the_twisted_cubic(twisted_cubic):
    plane = eliminate(twisted_cubic, ["x"])
    assert plane.ring.variables == ("y", "z", "w")
    assert plane == Ideal.from_strings(plane.ring, ["y*w - z^2"])
    data = plane.hilbert()
    assert (data.projective_dim, data.degree) == (1, 2)


def test_change_coordinates(ring):
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert change_coordinates(ideal(ring, "x", "z"), swap) == ideal(ring, "y", "z")


def test_graded_pieces(twisted_cubic):
    assert graded_piece_dim(twisted_cubic, 1) == 0
    assert graded_piece_dim(twisted_cubic, 2) == 3
    assert graded_piece_dim(twisted_cubic, 3) == 10
    assert len(twisted_cubic.graded_piece(2)) == 3
    assert all(twisted_cubic.contains(p) for p in twisted_cubic.graded_piece(3))


def test_trim_drops_redundant_generators(ring):
    trimmed = ideal(ring, "x", "y", "x + y", "x*z").trim()
    assert len(trimmed.gens) == 2
    assert trimmed == ideal(ring, "x", "y")


def test_saturated_powers(ring, twisted_cubic):
    line = ideal(ring, "x", "y")
    assert power_saturated(line, 2) == ideal(ring, "x^2", "x*y", "y^2")
    assert power_saturated(twisted_cubic, 1) is twisted_cubic
    with pytest.raises(ValueError):
        power_saturated(line, 0)


def test_liaison_of_the_twisted_cubic(ring, twisted_cubic):
    f, g = ring.parse("x*z - y^2"), ring.parse("y*w - z^2")
    residual = linked_ideal(twisted_cubic, f, g)
    assert residual == ideal(ring, "y", "z")
    data = residual.hilbert()
    assert (data.degree, data.genus) == (1, 0)


def test_liaison_needs_forms_in_the_ideal(ring, twisted_cubic):
    with pytest.raises(LiaisonError):
        linked_ideal(twisted_cubic, ring.parse("x^2"), ring.parse("y*w - z^2"))


def test_liaison_needs_a_complete_intersection(ring, twisted_cubic):
    q = ring.parse("x*z - y^2")
    with pytest.raises(LiaisonError):
        linked_ideal(twisted_cubic, q * ring.gen("x"), q * ring.gen("y"))


def test_jacobian_criterion(ring, twisted_cubic):
    assert singular_locus_smooth(twisted_cubic).smooth
    nodal = ideal(ring, "w", "y^2*z - x^3 - x^2*z")
    result = singular_locus_smooth(nodal, 2)
    assert not result.smooth
    assert result.sing_ideal.hilbert().degree == 1


def test_connectedness(twisted_cubic, skew_lines):
    assert connectedness_h1(twisted_cubic) == 0
    assert connectedness_h1(skew_lines) == 1


def test_rational_coefficients_give_the_same_answers():
    r = PolyRing(CoefficientField.rationals(), ("x", "y", "z", "w"))
    embedded = Ideal.from_strings(r, ["x^2", "x*y", "x*z", "x*w"])
    assert saturate_ideal(embedded) == Ideal.from_strings(r, ["x"])
    tc = Ideal.from_strings(r, ["x*z - y^2", "x*w - y*z", "y*w - z^2"])
    assert linked_ideal(tc, r.parse("x*z - y^2"), r.parse("y*w - z^2")) == Ideal.from_strings(r, ["y", "z"])


if __name__ == "__main__":
    pytest.main([__file__])
