"""Apolarity: differential operators acting on dual polynomials.

The base alphabet acts on its dual (and conversely) by the rule

    y^a (d^b) = a! * binom(b, a) * d^(b-a)   when b >= a, else 0,

with multi-index factorials and binomials; the scaling equals the true
partial-derivative coefficient prod_i b_i!/(b_i - a_i)!. Over F_p this
keeps the exact integer scaling reduced mod p, so workflows that rely on
invertible factorials must check ``field.char_exceeds(degree)`` first.
"""

from __future__ import annotations

from typing import Sequence

from .errors import AlphabetMismatch, NotGorensteinSocle, OddDegree, UsageError
from .linalg import Matrix, kernel_basis, rank
from .rings import (
    Alphabet,
    GradedSlice,
    HomogPoly,
    dim_homog,
    mono_index,
    monomials,
)


def _falling(b: int, a: int) -> int:
    """Falling factorial b * (b-1) * ... * (b-a+1)."""
    out = 1
    for i in range(a):
        out *= b - i
    return out


def _action_scale(b: tuple[int, ...], a: tuple[int, ...]) -> int:
    out = 1
    for bi, ai in zip(b, a):
        out *= _falling(bi, ai)
    return out


def differentiate(op: HomogPoly, target: HomogPoly) -> HomogPoly:
    """Apply ``op`` (in the dual alphabet of ``target``) to ``target``.

    Returns a polynomial of degree ``target.degree - op.degree`` in the
    target's alphabet; when the operator degree exceeds the target degree
    the result is the zero constant.
    """
    if op.alphabet != target.alphabet.dual():
        raise AlphabetMismatch("operator must live in the dual alphabet")
    if op.field != target.field:
        raise UsageError("field mismatch")
    field = op.field
    if op.degree > target.degree:
        return HomogPoly.zero(target.alphabet, 0, field)
    out_deg = target.degree - op.degree
    nvars = target.alphabet.nvars
    out = [field.zero] * dim_homog(nvars, out_deg)
    idx = mono_index(nvars, out_deg)
    p = field.p
    for c_op, a in op.terms():
        for c_t, b in target.terms():
            if all(bi >= ai for bi, ai in zip(b, a)):
                scale = _action_scale(b, a)
                if p is not None:
                    scale %= p
                if scale == 0:
                    continue
                i = idx[tuple(bi - ai for bi, ai in zip(b, a))]
                v = c_op * c_t * scale
                out[i] = (out[i] + v) if p is None else (out[i] + v) % p
    return HomogPoly(target.alphabet, out_deg, field, out)


def mirror(poly: HomogPoly) -> HomogPoly:
    """Same coefficient vector read over the dual alphabet."""
    return HomogPoly(poly.alphabet.dual(), poly.degree, poly.field, poly.coeffs)


def pairing_matrix(target: HomogPoly, op_degree: int) -> Matrix:
    """Matrix of op |-> op(target) on the degree-``op_degree`` dual piece.

    Rows are indexed by the monomial basis of the result degree, columns
    by the monomial basis of the operator degree.
    """
    field = target.field
    nvars = target.alphabet.nvars
    k = target.degree
    out_deg = k - op_degree
    n_rows = dim_homog(nvars, out_deg)
    ops = monomials(nvars, op_degree)
    mat = [[field.zero] * len(ops) for _ in range(n_rows)]
    if out_deg < 0:
        return Matrix(field, mat or [], len(ops))
    idx = mono_index(nvars, out_deg)
    p = field.p
    for j, a in enumerate(ops):
        for c, b in target.terms():
            if all(bi >= ai for bi, ai in zip(b, a)):
                scale = _action_scale(b, a)
                if p is not None:
                    scale %= p
                if scale == 0:
                    continue
                i = idx[tuple(bi - ai for bi, ai in zip(b, a))]
                v = c * scale
                mat[i][j] = (mat[i][j] + v) if p is None else (mat[i][j] + v) % p
    return Matrix(field, mat, len(ops))


def apolar_rank(target: HomogPoly, op_degree: int) -> int:
    """Rank of the apolarity pairing against degree-``op_degree`` operators."""
    return rank(pairing_matrix(target, op_degree))


def perp_slice(target: HomogPoly, op_degree: int) -> GradedSlice:
    """The annihilator slice in the dual alphabet at ``op_degree``.

    For ``op_degree`` above the target degree every operator annihilates,
    so the full slice is returned.
    """
    dual = target.alphabet.dual()
    if op_degree > target.degree:
        return GradedSlice.full(dual, op_degree, target.field)
    ker = kernel_basis(pairing_matrix(target, op_degree))
    return GradedSlice.from_matrix(dual, op_degree, target.field, ker)


def partials_slice(target: HomogPoly, op_degree: int) -> GradedSlice:
    """Span of all order-``op_degree`` derivatives of ``target``."""
    field = target.field
    polys = []
    for a in monomials(target.alphabet.nvars, op_degree):
        op = HomogPoly.from_terms(target.alphabet.dual(), op_degree, field, [(field.one, a)])
        polys.append(differentiate(op, target))
    return GradedSlice.from_polys(polys)


def catalecticant_rank(target: HomogPoly) -> int:
    """Rank of the middle catalecticant; requires even degree."""
    if target.degree % 2:
        raise OddDegree("catalecticant middle needs an even degree")
    return apolar_rank(target, target.degree // 2)


def is_nondegenerate(target: HomogPoly) -> bool:
    """True when the middle catalecticant has full rank."""
    half = target.degree // 2
    if target.degree % 2:
        raise OddDegree("nondegeneracy is a middle-catalecticant condition")
    return catalecticant_rank(target) == dim_homog(target.alphabet.nvars, half)


def hilbert_function(target: HomogPoly) -> tuple[int, ...]:
    """Hilbert function of the apolar algebra, degrees 0..deg(target)."""
    if target.is_zero():
        raise UsageError("hilbert_function of the zero form")
    return tuple(apolar_rank(target, d) for d in range(target.degree + 1))


def dual_socle_generator(gens: Sequence[HomogPoly], k: int) -> HomogPoly:
    """The degree-``k`` dual form annihilated by every generator.

    The joint annihilator of ``gens`` inside the degree-``k`` dual piece
    must be a line; its generator is returned with the first nonzero
    grlex coefficient normalized to 1. Raises ``NotGorensteinSocle``
    otherwise.
    """
    if not gens:
        raise UsageError("need at least one generator")
    field = gens[0].field
    alphabet = gens[0].alphabet
    for g in gens[1:]:
        if g.alphabet != alphabet or g.field != field:
            raise AlphabetMismatch("generators must share alphabet and field")
    nvars = alphabet.nvars
    n_cols = dim_homog(nvars, k)
    col_idx = mono_index(nvars, k)
    rows: list[list] = []
    p = field.p
    for g in gens:
        e = g.degree
        if e > k:
            continue
        out_deg = k - e
        out_idx = mono_index(nvars, out_deg)
        block = [[field.zero] * n_cols for _ in range(dim_homog(nvars, out_deg))]
        for c, a in g.terms():
            for gamma in monomials(nvars, out_deg):
                b = tuple(gi + ai for gi, ai in zip(gamma, a))
                scale = _action_scale(b, a)
                if p is not None:
                    scale %= p
                if scale == 0:
                    continue
                v = c * scale
                i = out_idx[gamma]
                j = col_idx[b]
                block[i][j] = (block[i][j] + v) if p is None else (block[i][j] + v) % p
        rows.extend(block)
    ker = kernel_basis(Matrix(field, rows, n_cols))
    if ker.ncols != 1:
        raise NotGorensteinSocle(
            f"joint annihilator in degree {k} has dimension {ker.ncols}, expected 1"
        )
    poly = HomogPoly(alphabet.dual(), k, field, ker.column(0))
    return poly.leading_normalized()


def apolar_pairing(op: HomogPoly, target: HomogPoly):
    """Full contraction of equal-degree dual forms (a field scalar)."""
    if op.degree != target.degree:
        raise UsageError("pairing needs equal degrees")
    result = differentiate(op, target)
    return result.coeffs[0]
