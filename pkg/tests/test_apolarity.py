"""Differentiation pairing, annihilators, Hilbert functions, socle recovery."""

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from skewlab import (
    GF,
    QQ,
    AlphabetMismatch,
    HomogPoly,
    NotGorensteinSocle,
    OddDegree,
    SplitMix64,
    UsageError,
    apolar_pairing,
    apolar_rank,
    catalecticant_rank,
    d_vars,
    differentiate,
    dim_homog,
    dual_socle_generator,
    hilbert_function,
    is_nondegenerate,
    mirror,
    pairing_matrix,
    partials_slice,
    parse_poly,
    perp_slice,
    y_vars,
)
from skewlab.randomness import random_form, random_nondegenerate_dual_form


def dpoly(text, field=QQ, degree=None):
    return parse_poly(text, d_vars(), field, degree=degree)


def ypoly(text, field=QQ, degree=None):
    return parse_poly(text, y_vars(), field, degree=degree)


def test_single_action_worked_example():
    # y0*y1 applied to d0^2*d1*d2 leaves 2*d0*d2
    got = differentiate(ypoly("y0*y1"), dpoly("d0^2*d1*d2"))
    assert got == dpoly("2*d0*d2")


def test_falling_factorial_scale():
    # y0^2 on d0^3 is 3*2 = 6 copies of d0
    assert differentiate(ypoly("y0^2"), dpoly("d0^3")) == dpoly("6*d0")
    # mismatched exponents annihilate
    assert differentiate(ypoly("y1^2"), dpoly("d0^2*d1")).is_zero()


def test_differentiate_matches_sympy():
    rng = SplitMix64(3)
    syms = sympy.symbols("t0 t1 t2")

    def expr_of(poly):
        total = sympy.Integer(0)
        for c, e in poly.terms():
            mono = sympy.Integer(1)
            for s, k in zip(syms, e):
                mono *= s**k
            total += sympy.Rational(c) * mono
        return total

    for _ in range(4):
        target = random_form(d_vars(), 4, QQ, rng)
        op = random_form(y_vars(), 2, QQ, rng)
        got = differentiate(op, target)
        want = sympy.Integer(0)
        for c, e in op.terms():
            term = expr_of(target)
            for s, k in zip(syms, e):
                term = sympy.diff(term, s, k)
            want += sympy.Rational(c) * term
        assert sympy.expand(expr_of(got) - want) == 0


def test_differentiate_requires_dual_alphabet():
    with pytest.raises(AlphabetMismatch):
        differentiate(dpoly("d0"), dpoly("d0^2"))


def test_mirror_is_degree_preserving_involution():
    rng = SplitMix64(9)
    poly = random_form(y_vars(), 3, GF(101), rng)
    m = mirror(poly)
    assert m.alphabet == d_vars() and m.coeffs == poly.coeffs
    assert mirror(m) == poly


def test_apolar_pairing_diagonal():
    # <y^a, d^a> is the product of the factorials of the exponents
    assert apolar_pairing(ypoly("y0*y1*y2"), dpoly("d0*d1*d2")) == 1
    assert apolar_pairing(ypoly("y0^3"), dpoly("d0^3")) == 6
    assert apolar_pairing(ypoly("y0^2*y1"), dpoly("d0*d1^2")) == 0
    with pytest.raises(UsageError):
        apolar_pairing(ypoly("y0"), dpoly("d0^2"))


def test_perp_slice_of_monomial_power():
    # operators of degree 2 killing d0^4: everything except y0^2
    f = dpoly("d0^4")
    perp = perp_slice(f, 2)
    assert perp.alphabet == y_vars() and perp.degree == 2
    assert perp.dim == dim_homog(3, 2) - 1
    assert perp.contains(ypoly("y1^2"))
    assert not perp.contains(ypoly("y0^2"))
    # beyond the degree of the form everything annihilates
    assert perp_slice(f, 5).dim == dim_homog(3, 5)


def test_partials_slice_dims():
    f = dpoly("d0^4")
    assert partials_slice(f, 1).dim == 1
    rng = SplitMix64(14)
    g = random_nondegenerate_dual_form(4, QQ, rng)
    assert partials_slice(g, 1).dim == 3
    assert partials_slice(g, 2).dim == 6


def test_pairing_matrix_and_rank():
    rng = SplitMix64(15)
    g = random_nondegenerate_dual_form(4, GF(32003), rng)
    m = pairing_matrix(g, 2)
    assert (m.nrows, m.ncols) == (6, 6)
    assert apolar_rank(g, 2) == 6
    assert apolar_rank(dpoly("d0^4"), 2) == 1


def test_hilbert_function_values():
    assert hilbert_function(dpoly("d0^4")) == (1, 1, 1, 1, 1)
    rng = SplitMix64(16)
    g = random_nondegenerate_dual_form(4, GF(32003), rng)
    assert hilbert_function(g) == (1, 3, 6, 3, 1)
    g6 = random_nondegenerate_dual_form(6, GF(32003), rng)
    assert hilbert_function(g6) == (1, 3, 6, 10, 6, 3, 1)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=15, max_size=15))
def test_hilbert_function_is_symmetric(coeffs):
    f = HomogPoly(d_vars(), 4, QQ, [Fraction(c) for c in coeffs])
    if f.is_zero():
        return
    h = hilbert_function(f)
    assert h == tuple(reversed(h))
    assert all(v <= dim_homog(3, t) for t, v in enumerate(h))


def test_catalecticant_rank():
    rng = SplitMix64(17)
    g = random_nondegenerate_dual_form(4, QQ, rng)
    assert catalecticant_rank(g) == 6
    assert is_nondegenerate(g)
    assert catalecticant_rank(dpoly("d0^4")) == 1
    assert not is_nondegenerate(dpoly("d0^4"))
    with pytest.raises(OddDegree):
        catalecticant_rank(dpoly("d0^3"))


def test_dual_socle_generator_complete_intersection():
    # annihilator of (y0^2, y1^2, y2^2) in degree 3 is spanned by d0*d1*d2
    gens = [ypoly("y0^2"), ypoly("y1^2"), ypoly("y2^2")]
    f = dual_socle_generator(gens, 3)
    assert f == dpoly("d0*d1*d2")


def test_dual_socle_generator_degree_zero():
    gens = [ypoly("y0"), ypoly("y1"), ypoly("y2")]
    f = dual_socle_generator(gens, 0)
    assert f.degree == 0 and f.coeffs == (Fraction(1),)


def test_dual_socle_generator_rejects_fat_annihilator():
    # a single quadric kills a 5-dimensional space of quadratic operators
    with pytest.raises(NotGorensteinSocle):
        dual_socle_generator([ypoly("y0^2")], 2)


def test_perp_of_socle_recovers_generators():
    # closing the loop: gens -> socle -> annihilator contains the gens
    gens = [ypoly("y0^2"), ypoly("y1^2"), ypoly("y2^2")]
    f = dual_socle_generator(gens, 3)
    perp = perp_slice(f, 2)
    for g in gens:
        assert perp.contains(g)
