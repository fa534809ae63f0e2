#!/usr/bin/env python3
"""
Tests for the exact polynomial core: fields, rings, polynomials, parsing,
Groebner bases, Hilbert data and polynomial matrices
"""

from fractions import Fraction

import numpy as np
import pytest

from src.core.field import CoefficientField
from src.core.groebner import Budget, groebner
from src.core.hilbert import HilbertData, hilbert_numerator
from src.core.ideal import Ideal, coefficient_rows
from src.core.linalg import nullspace, rank
from src.core.matrix import (PolyMatrix, determinant, determinantal_hypersurface, jacobian_matrix, maximal_minors,
                             tensor_flip)
from src.core.parser import ideal_to_json, parse_ideal_json, parse_ideal_text, parse_matrix_text, parse_ring
from src.core.ring import ExponentCodec, MonomialOrder, PolyRing
from src.utils.errors import InhomogeneousError, ParseError, PreconditionError, ResourceBudgetError

GF = CoefficientField.prime_field(32003)
QQ = CoefficientField.rationals()


@pytest.fixture
def ring():
    return PolyRing(GF, ("x", "y", "z", "w"))


@pytest.fixture
def qring():
    return PolyRing(QQ, ("x", "y", "z", "w"))


def twisted_cubic(r):
    return Ideal.from_strings(r, ["x*z - y^2", "x*w - y*z", "y*w - z^2"], "twisted cubic")


# fields

def test_prime_field_arithmetic():
    F = CoefficientField.prime_field(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F(Fraction(1, 2)) == 4
    assert F.to_str(6) == "-1"
    assert F.describe() == "fp 7"


def test_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        CoefficientField.prime_field(32001)


def test_rationals_stay_exact():
    assert QQ(Fraction(3, 6)) == Fraction(1, 2)
    assert QQ.div(QQ(1), QQ(3)) == Fraction(1, 3)
    assert QQ.describe() == "q"


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF.inv(0)


def test_random_elements_follow_the_seed():
    a = [GF.random_element(np.random.default_rng(5)) for _ in range(3)]
    b = [GF.random_element(np.random.default_rng(5)) for _ in range(3)]
    assert a == b
    assert all(0 <= v < 32003 for v in a)


# rings and orders

def test_grevlex_order(ring):
    order = [ring.monomial_str(e) for e in ring.monomials_of_degree(2)[:4]]
    assert order == ["x^2", "x*y", "y^2", "x*z"]


def test_lex_order_prefers_first_variable():
    r = PolyRing(GF, ("x", "y"), MonomialOrder("lex"))
    assert r.key((1, 0)) > r.key((0, 5))


def test_elimination_order_compares_block_degree_first():
    r = PolyRing(GF, ("t", "x", "y"), MonomialOrder("elim", 1))
    assert r.key((1, 0, 0)) > r.key((0, 3, 0))
    assert MonomialOrder.parse("elim(1)") == MonomialOrder("elim", 1)


def test_count_monomials(ring):
    assert ring.count_monomials(4) == 35
    assert ring.count_monomials(-1) == 0
    assert len(ring.monomials_of_degree(3)) == 20


def test_exponent_codec_divisibility():
    codec = ExponentCodec(4)
    a, b = codec.pack((1, 0, 2, 0)), codec.pack((1, 1, 3, 0))
    assert codec.divides(a, b)
    assert not codec.divides(b, a)
    assert codec.unpack(b) == (1, 1, 3, 0)


def test_exponent_overflow_is_a_budget_error():
    with pytest.raises(ResourceBudgetError):
        ExponentCodec(2).pack((256, 0))


# polynomials

def test_polynomial_arithmetic(ring):
    x, y = ring.gen("x"), ring.gen("y")
    p = (x + y) ** 2
    assert str(p) == "x^2 + 2*x*y + y^2"
    assert p - x * x - y * y == x * y * 2
    assert p.degree() == 2
    assert p.is_homogeneous()
    assert not (p + x).is_homogeneous()
    assert ring.zero().degree() == -1


def test_polynomial_evaluation_and_derivative(ring):
    p = ring.parse("x^3 - 2*x*y*w + z^2*w")
    assert p.evaluate((1, 1, 1, 1)) == 0
    assert p.derivative(0) == ring.parse("3*x^2 - 2*y*w")
    assert p.substitute(ring.gens()) == p


def test_exact_divide(ring):
    x, y = ring.gen("x"), ring.gen("y")
    assert (x * x - y * y).exact_divide(x - y) == x + y
    with pytest.raises(ValueError):
        (x * x + y * y).exact_divide(x - y)


def test_negative_coefficients_print_balanced(ring):
    assert str(ring.parse("x - 3*y")) == "x - 3*y"


def test_ring_mismatch_is_rejected(ring, qring):
    from src.utils.errors import RingMismatchError
    with pytest.raises(RingMismatchError):
        ring.gen("x") + qring.gen("x")


# parsing

def test_parse_ring_line():
    r = parse_ring("ring fp 101 [a, b,c]")
    assert r.variables == ("a", "b", "c")
    assert r.field == CoefficientField.prime_field(101)
    assert parse_ring("ring q [x,y]").field == QQ


@pytest.mark.parametrize("line", ["ring fp 100 [x]", "ring r [x]", "ring q [1x]", "ring q [x,x]"])
def test_parse_ring_rejects_bad_lines(line):
    with pytest.raises((ParseError, ValueError)):
        parse_ring(line)


def test_parse_rational_coefficients(qring):
    assert qring.parse("3/2*x").terms[(1, 0, 0, 0)] == Fraction(3, 2)


@pytest.mark.parametrize("text", ["x*v", "2.5*x", "x y", "import os", ""])
def test_parse_polynomial_rejects(text, ring):
    with pytest.raises(ParseError):
        ring.parse(text)


def test_ideal_text_and_json():
    r, gens = parse_ideal_text("ring fp 32003 [x,y,z,w]\n# a line\nx*z - y^2, x*w - y*z\ny*w - z^2\n")
    assert len(gens) == 3
    data = ideal_to_json(r, gens)
    assert data["ring"] == "ring fp 32003 [x,y,z,w]"
    r2, gens2 = parse_ideal_json(data)
    assert r2 == r and gens2 == gens
    with pytest.raises(ParseError):
        parse_ideal_json({"generators": []})


def test_matrix_file_needs_equal_rows(ring):
    with pytest.raises(ParseError):
        parse_matrix_text("x; y\nz\n", ring)
    m = parse_matrix_text("ring fp 32003 [x,y]\nx; y\ny; x\n")
    assert (m.nrows, m.ncols) == (2, 2)


# Groebner bases

def test_twisted_cubic_basis_is_the_three_quadrics(ring):
    basis = groebner(twisted_cubic(ring).gens)
    assert len(basis) == 3
    assert all(g.degree() == 2 for g in basis)
    assert all(g.leading_coefficient() == 1 for g in basis)


def test_groebner_basis_reduces_ideal_members(ring):
    i = twisted_cubic(ring)
    x, y, z, w = ring.gens()
    member = (x * z - y * y) * (x + w) + (y * w - z * z) * y * 3
    assert i.contains(member)
    assert not i.contains(x * w)
    assert i.normal_form(member).is_zero()


def test_lex_and_grevlex_bases_generate_the_same_ideal(ring):
    i = twisted_cubic(ring)
    lex = i.groebner(MonomialOrder("lex"))
    assert all(i.contains(g.in_ring(ring)) for g in lex)


def test_unit_ideal(ring):
    x, y = ring.gen("x"), ring.gen("y")
    assert Ideal(ring, [ring.one()]).is_unit
    assert not Ideal(ring, [x, y]).is_unit


def test_inhomogeneous_generators_are_rejected(ring):
    with pytest.raises(InhomogeneousError):
        Ideal(ring, [ring.parse("x^2 - y")])


def test_pair_budget_is_enforced(ring):
    gens = [ring.random_form(3, np.random.default_rng(1)) for _ in range(4)]
    with pytest.raises(ResourceBudgetError):
        groebner(gens, budget=Budget(max_degree=40, max_pairs=1, max_seconds=60))


def test_groebner_over_the_rationals(qring):
    i = twisted_cubic(qring)
    assert i.hilbert().degree == 3
    assert i.contains(qring.parse("1/2*x*z - 1/2*y^2"))


CANONICITY_FIXTURES = {
    "twisted cubic": ["x*z - y^2", "x*w - y*z", "y*w - z^2"],
    "skew lines": ["x*z", "x*w", "y*z", "y*w"],
    "rational quartic": ["x*w - y*z", "y^3 - x^2*z", "z^3 - y*w^2", "x*z^2 - y^2*w"],
    "nodal plane cubic": ["w", "y^2*z - x^3 - x^2*z"],
    "three quadrics": ["x*y - z*w", "x^2 + y^2 - z^2 - w^2", "x*z - y*w + z^2"],
}


@pytest.mark.parametrize("name", sorted(CANONICITY_FIXTURES))
def test_reduced_basis_does_not_depend_on_generator_order(ring, name):
    gens = [ring.parse(g) for g in CANONICITY_FIXTURES[name]]
    reference = groebner(gens)
    rng = np.random.default_rng(11)
    for _ in range(20):
        basis = groebner([gens[j] for j in rng.permutation(len(gens))])
        assert basis == reference
        assert [str(g) for g in basis] == [str(g) for g in reference]


@pytest.mark.parametrize("name", sorted(CANONICITY_FIXTURES))
def test_hilbert_function_counts_independent_conditions(ring, name):
    i = Ideal.from_strings(ring, CANONICITY_FIXTURES[name])
    data = i.hilbert()
    rng = np.random.default_rng(7)
    for m in rng.integers(0, 7, size=4):
        monomials = ring.monomials_of_degree(int(m))
        products = [g.mul_monomial(mu) for g in i.gens for mu in ring.monomials_of_degree(int(m) - g.degree())]
        span = rank(coefficient_rows(products, monomials), len(monomials), GF) if products else 0
        assert data.hilbert_function(int(m)) == len(monomials) - span, (name, m)


# Hilbert data

def test_hilbert_numerator_of_monomial_ideals():
    assert hilbert_numerator([(1, 0, 0, 0)]) == (1, -1)
    assert hilbert_numerator([(1, 0, 0, 0), (0, 1, 0, 0)]) == (1, -2, 1)
    assert hilbert_numerator([(2, 0, 0)]) == (1, 0, -1)


def test_hilbert_data_of_twisted_cubic(ring):
    data = twisted_cubic(ring).hilbert()
    assert data.numerator == (1, 0, -3, 2)
    assert (data.codim, data.projective_dim, data.degree, data.genus) == (2, 1, 3, 0)
    assert data.hilbert_series(4) == [1, 4, 7, 10, 13]
    assert data.hilbert_polynomial(10) == 31
    assert data.regularity_bound == 0


def test_hilbert_data_of_points(ring):
    i = Ideal.from_strings(ring, ["y", "z", "x*w*(x - w)"])
    data = i.hilbert()
    assert data.projective_dim == 0
    assert data.degree == 3
    with pytest.raises(ValueError):
        data.genus


def test_plane_curve_genus():
    data = HilbertData.from_leading_monomials([(0, 0, 0, 1), (4, 0, 0, 0)], 4)
    assert (data.degree, data.genus) == (4, 3)


# matrices

def test_determinant_and_minors(ring):
    x, y, z, w = ring.gens()
    m = PolyMatrix(ring, [[x, y], [z, w]])
    assert determinant(m) == x * w - y * z
    tc = PolyMatrix(ring, [[x, y, z], [y, z, w]])
    assert Ideal(ring, maximal_minors(tc)) == twisted_cubic(ring)


def test_rank_at_a_point_and_jacobian(ring):
    x, y, z, w = ring.gens()
    m = PolyMatrix(ring, [[x, y], [z, w]])
    assert m.rank_at((1, 0, 0, 1)) == 2
    assert m.rank_at((1, 1, 1, 1)) == 1
    assert m.rank_at((0, 0, 0, 0)) == 0
    jac = jacobian_matrix([x * w - y * z])
    assert jac.rows[0] == [w, -z, -y, x]


def test_tensor_flip_shape_and_entries():
    r = PolyRing(GF, ("x", "y"))
    x, y = r.gens()
    m = PolyMatrix(r, [[x, y], [y, x], [x + y, r.zero()]])
    flipped = tensor_flip(m)
    assert (flipped.nrows, flipped.ncols) == (2, 2)
    t0, t1, t2 = flipped.ring.gens()
    assert flipped[0, 0] == t0 + t2
    assert flipped[1, 0] == t1 + t2
    assert flipped[0, 1] == t1


def test_row_swap_negates_the_determinant():
    r = PolyRing(GF, ("x", "y", "z"))
    rng = np.random.default_rng(3)
    for _ in range(50):
        m = PolyMatrix(r, [[r.random_form(1, rng) for _ in range(3)] for _ in range(3)])
        i, j = (int(v) for v in rng.choice(3, size=2, replace=False))
        assert determinant(m.swap_rows(i, j)) == -determinant(m)


def _unit(k, n):
    return [1 if v == k else 0 for v in range(n)]


def test_tensor_flip_preserves_pairing_and_rank():
    r = PolyRing(GF, ("x", "y", "z"))
    rng = np.random.default_rng(4)
    for _ in range(50):
        m = PolyMatrix(r, [[r.random_form(1, rng) for _ in range(2)] for _ in range(4)])
        flipped = tensor_flip(m)
        p = [GF.random_element(rng) for _ in range(3)]
        q = [GF.random_element(rng) for _ in range(4)]
        mp, nq = m.evaluate(p), flipped.evaluate(q)
        for j in range(2):
            assert sum(q[i] * mp[i][j] for i in range(4)) % 32003 == sum(p[v] * nq[v][j] for v in range(3)) % 32003
        slices_m = [row for v in range(3) for row in m.evaluate(_unit(v, 3))]
        slices_n = [row for i in range(4) for row in flipped.evaluate(_unit(i, 4))]
        assert rank(slices_m, 2, GF) == rank(slices_n, 2, GF)


def test_determinantal_hypersurface_needs_the_right_shape(ring):
    x, y = ring.gen("x"), ring.gen("y")
    with pytest.raises(PreconditionError):
        determinantal_hypersurface(PolyMatrix(ring, [[x, y]]))


def test_determinantal_hypersurface_of_a_generic_3x2():
    r = PolyRing(GF, ("x", "y"))
    m = parse_matrix_text("x; y\ny; x + y\n2*x; y\n", r)
    _, form = determinantal_hypersurface(m)
    assert form.degree() == 2
    assert form.ring.nvars == 3


# linear algebra

def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows, 3, GF) == 2
    kernel = nullspace(rows, 3, GF)
    assert len(kernel) == 1
    v = kernel[0]
    assert all(sum(a * b for a, b in zip(row, v)) % 32003 == 0 for row in rows)
    assert rank([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(2)]], 2, QQ) == 1


if __name__ == "__main__":
    pytest.main([__file__])
