"""Skew matrices of linear forms, Pfaffians, and the tensor flip.

A square skew matrix N with entries linear in y0..y(m-1) and an n x m
pencil M with entries linear in x0..x(n-1) are two slices of one tensor
(a^k_{i,j}); ``tensor_flip`` and ``tensor_unflip`` convert between them.
Pfaffians use first-row expansion memoized over index subsets, which is
exact over any ring and adequate through order 13.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

from .errors import (
    AlphabetMismatch,
    DegreeMismatch,
    EvenOrder,
    FormatError,
    NotSkew,
    OddOrder,
    UsageError,
)
from .fields import Field
from .linalg import Matrix
from .rings import Alphabet, HomogPoly, format_poly, parse_poly


class PolyMatrix:
    """Rectangular matrix of homogeneous polynomials of one degree."""

    __slots__ = ("nrows", "ncols", "entries", "alphabet", "degree", "field")

    def __init__(self, entries: Sequence[Sequence[HomogPoly]]):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise UsageError("empty polynomial matrix")
        ncols = len(entries[0])
        if any(len(row) != ncols for row in entries):
            raise UsageError("ragged rows")
        first = entries[0][0]
        for row in entries:
            for q in row:
                if q.alphabet != first.alphabet:
                    raise AlphabetMismatch("mixed alphabets in one matrix")
                if q.field != first.field:
                    raise UsageError("mixed fields in one matrix")
                if q.degree != first.degree:
                    raise DegreeMismatch("mixed degrees in one matrix")
        self.entries = entries
        self.nrows = len(entries)
        self.ncols = ncols
        self.alphabet = first.alphabet
        self.degree = first.degree
        self.field = first.field

    def entry(self, i: int, j: int) -> HomogPoly:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[HomogPoly, ...]:
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyMatrix) and other.entries == self.entries

    def __hash__(self) -> int:  # pragma: no cover
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols}, deg={self.degree}, {self.alphabet.key})"


def is_skew_matrix(pm: PolyMatrix) -> bool:
    if pm.nrows != pm.ncols:
        return False
    for i in range(pm.nrows):
        if not pm.entries[i][i].is_zero():
            return False
        for j in range(i + 1, pm.ncols):
            if pm.entries[i][j] != -pm.entries[j][i]:
                return False
    return True


def skew_linear(entries: Sequence[Sequence[HomogPoly]] | PolyMatrix) -> PolyMatrix:
    """Validated skew matrix of linear forms."""
    pm = entries if isinstance(entries, PolyMatrix) else PolyMatrix(entries)
    if pm.degree != 1:
        raise DegreeMismatch("skew pencil entries must be linear forms")
    if not is_skew_matrix(pm):
        raise NotSkew("matrix is not skew-symmetric")
    return pm


# -- pfaffian core --------------------------------------------------------


def _pfaffian_subsets(
    entry: Callable[[int, int], object],
    is_zero: Callable[[object], bool],
    add,
    mul,
    neg,
    one,
    zero_for: Callable[[int], object],
):
    """Memoized Pfaffian over sorted index tuples via first-row expansion.

    ``zero_for(k)`` builds the zero value for a Pfaffian of ``k`` pairs
    (needed to grade polynomial zeros correctly).
    """
    memo: dict[tuple[int, ...], object] = {(): one}

    def pf(idx: tuple[int, ...]):
        try:
            return memo[idx]
        except KeyError:
            pass
        i0 = idx[0]
        rest = idx[1:]
        acc = None
        positive = True
        for t, j in enumerate(rest):
            e = entry(i0, j)
            if not is_zero(e):
                term = mul(e, pf(rest[:t] + rest[t + 1 :]))
                if not positive:
                    term = neg(term)
                acc = term if acc is None else add(acc, term)
            positive = not positive
        if acc is None:
            acc = zero_for(len(idx) // 2)
        memo[idx] = acc
        return acc

    return pf


def _poly_pf(pm: PolyMatrix):
    field = pm.field
    alphabet = pm.alphabet
    entry_degree = pm.degree
    one = HomogPoly(alphabet, 0, field, [field.one])
    return _pfaffian_subsets(
        lambda i, j: pm.entries[i][j],
        lambda q: q.is_zero(),
        lambda a, b: a + b,
        lambda a, b: a * b,
        lambda a: -a,
        one,
        lambda k: HomogPoly.zero(alphabet, entry_degree * k, field),
    )


def pfaffian_poly(pm: PolyMatrix, check: bool = True) -> HomogPoly:
    """Pfaffian of an even-order skew polynomial matrix.

    Convention: pf of [[0, a], [-a, 0]] is ``a``; the empty product
    convention gives the order-0 matrix Pfaffian 1.
    """
    if pm.nrows != pm.ncols:
        raise UsageError("pfaffian of a non-square matrix")
    if pm.nrows % 2:
        raise OddOrder("pfaffian needs even order")
    if check and not is_skew_matrix(pm):
        raise NotSkew("pfaffian of a non-skew matrix")
    return _poly_pf(pm)(tuple(range(pm.nrows)))


def pfaffian_scalar(mat: Matrix, check: bool = True):
    """Pfaffian of an even-order skew scalar matrix (a field scalar)."""
    if mat.nrows != mat.ncols:
        raise UsageError("pfaffian of a non-square matrix")
    if mat.nrows % 2:
        raise OddOrder("pfaffian needs even order")
    field = mat.field
    if check:
        for i in range(mat.nrows):
            if mat.rows[i][i] != 0:
                raise NotSkew("nonzero diagonal")
            for j in range(i + 1, mat.ncols):
                if mat.rows[i][j] != field.neg(mat.rows[j][i]):
                    raise NotSkew("matrix is not skew-symmetric")
    p = field.p
    if p is None:
        add = lambda a, b: a + b
        mul = lambda a, b: a * b
        neg = lambda a: -a
    else:
        add = lambda a, b: (a + b) % p
        mul = lambda a, b: (a * b) % p
        neg = lambda a: (-a) % p
    pf = _pfaffian_subsets(
        lambda i, j: mat.rows[i][j],
        lambda e: e == 0,
        add,
        mul,
        neg,
        field.one,
        lambda k: field.zero,
    )
    return pf(tuple(range(mat.nrows)))


def sub_pfaffians(
    pm: PolyMatrix, check: bool = True
) -> tuple[tuple[HomogPoly, ...], tuple[HomogPoly, ...]]:
    """Principal sub-Pfaffians of an odd-order skew matrix.

    Returns ``(pf, signed)`` where ``pf[i]`` is the Pfaffian with row and
    column ``i`` deleted and ``signed[i] = (-1)^i pf[i]``. The signed
    vector satisfies ``N signed = 0`` identically; that identity fixes
    the sign convention.
    """
    if pm.nrows != pm.ncols:
        raise UsageError("sub-Pfaffians of a non-square matrix")
    if pm.nrows % 2 == 0:
        raise EvenOrder("sub-Pfaffian vector needs odd order")
    if check and not is_skew_matrix(pm):
        raise NotSkew("sub-Pfaffians of a non-skew matrix")
    n = pm.nrows
    pf = _poly_pf(pm)
    pfs = []
    for i in range(n):
        idx = tuple(j for j in range(n) if j != i)
        pfs.append(pf(idx))
    signed = tuple(q if i % 2 == 0 else -q for i, q in enumerate(pfs))
    return tuple(pfs), signed


# -- tensor flip ------------------------------------------------------------


def tensor_flip(pm: PolyMatrix) -> PolyMatrix:
    """Skew n x n matrix over y0..y(m-1) -> n x m pencil over x0..x(n-1).

    Writing N[i][j] = sum_k a^k_{i,j} y_k, the flip is
    M[j][k] = sum_i a^k_{i,j} x_i.
    """
    skew_linear(pm)
    n = pm.nrows
    m = pm.alphabet.nvars
    field = pm.field
    x_alph = Alphabet("X", n)
    out = []
    for j in range(n):
        row = []
        for k in range(m):
            coeffs = [pm.entries[i][j].coeffs[k] for i in range(n)]
            row.append(HomogPoly(x_alph, 1, field, coeffs))
        out.append(row)
    return PolyMatrix(out)


def tensor_unflip(pm: PolyMatrix) -> PolyMatrix:
    """Inverse of ``tensor_flip``; validates skewness of the result."""
    if pm.alphabet.key != "X":
        raise AlphabetMismatch("pencil must live over the x alphabet")
    if pm.degree != 1:
        raise DegreeMismatch("pencil entries must be linear")
    n = pm.nrows
    if pm.alphabet.nvars != n:
        raise DegreeMismatch("pencil needs as many x variables as rows")
    m = pm.ncols
    field = pm.field
    y_alph = Alphabet("Y", m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [pm.entries[j][k].coeffs[i] for k in range(m)]
            row.append(HomogPoly(y_alph, 1, field, coeffs))
        out.append(row)
    return skew_linear(out)


# -- determinants and minors ---------------------------------------------------


def det_poly(rows: Sequence[Sequence[HomogPoly]]) -> HomogPoly:
    """Determinant of a small square polynomial matrix (Laplace)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise UsageError("determinant of a non-square matrix")
    first = rows[0][0]
    field = first.field

    def expand(row_ids: tuple[int, ...], col_ids: tuple[int, ...]) -> HomogPoly:
        if len(row_ids) == 1:
            return rows[row_ids[0]][col_ids[0]]
        i0 = row_ids[0]
        acc = None
        for t, j in enumerate(col_ids):
            e = rows[i0][j]
            if e.is_zero():
                continue
            minor = expand(row_ids[1:], col_ids[:t] + col_ids[t + 1 :])
            term = e * minor
            if t % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            deg = first.degree * len(row_ids)
            return HomogPoly.zero(first.alphabet, deg, field)
        return acc

    return expand(tuple(range(n)), tuple(range(n)))


def maximal_minors(pm: PolyMatrix) -> list[HomogPoly]:
    """All maximal minors of a tall pencil, row subsets in lex order."""
    if pm.nrows <= pm.ncols:
        raise UsageError("maximal minors expect more rows than columns")
    out = []
    for rows_sel in combinations(range(pm.nrows), pm.ncols):
        sub = [pm.entries[i] for i in rows_sel]
        out.append(det_poly(sub))
    return out


# -- evaluation and products ---------------------------------------------------


def evaluate_matrix(pm: PolyMatrix, point: Sequence) -> Matrix:
    """Scalar matrix of entry values at a point."""
    rows = [[q.evaluate(point) for q in row] for row in pm.entries]
    return Matrix(pm.field, rows, pm.ncols)


def mat_vec_poly(pm: PolyMatrix, vec: Sequence[HomogPoly]) -> list[HomogPoly]:
    """Product of a polynomial matrix with a polynomial vector."""
    if len(vec) != pm.ncols:
        raise DegreeMismatch("vector length mismatch")
    out = []
    tdeg = pm.degree + vec[0].degree
    for row in pm.entries:
        acc = HomogPoly.zero(pm.alphabet, tdeg, pm.field)
        for a, b in zip(row, vec):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


def congruence(pm: PolyMatrix, p_mat: Matrix) -> PolyMatrix:
    """Congruence P^T (pm) P for a constant square matrix P."""
    if p_mat.nrows != pm.nrows or p_mat.ncols != pm.nrows:
        raise DegreeMismatch("congruence needs a square matrix of matching order")
    n = pm.nrows
    field = pm.field
    zero = HomogPoly.zero(pm.alphabet, pm.degree, field)

    # W = pm . P
    w = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                c = p_mat.rows[k][j]
                if c != 0:
                    acc = acc + pm.entries[i][k].scale(c)
            w[i][j] = acc
    # out = P^T . W
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                c = p_mat.rows[k][i]
                if c != 0:
                    acc = acc + w[k][j].scale(c)
            out[i][j] = acc
    return PolyMatrix(out)


# -- serialization ---------------------------------------------------------------


def poly_matrix_to_json(pm: PolyMatrix, kind: str) -> dict:
    """Matrix JSON; ``kind`` is ``"skew-linear"`` or ``"pencil"``.

    For a skew matrix ``n`` is the order and ``m`` the number of base
    variables; for a pencil ``n`` is the row count (and the number of x
    variables) and ``m`` the column count.
    """
    if kind == "skew-linear":
        n, m = pm.nrows, pm.alphabet.nvars
    elif kind == "pencil":
        n, m = pm.nrows, pm.ncols
    else:
        raise UsageError(f"unknown matrix kind {kind!r}")
    return {
        "kind": kind,
        "n": n,
        "m": m,
        "alphabet": pm.alphabet.key,
        "nvars": pm.alphabet.nvars,
        "degree": pm.degree,
        "field": pm.field.to_json(),
        "entries": [[format_poly(q) for q in row] for row in pm.entries],
    }


def poly_matrix_from_json(obj: dict) -> PolyMatrix:
    """Load matrix JSON; skew matrices are re-validated on load."""
    try:
        kind = obj["kind"]
        field = Field.from_json(obj["field"])
        alphabet = Alphabet(str(obj["alphabet"]), int(obj["nvars"]))
        degree = int(obj["degree"])
        entries = [
            [parse_poly(t, alphabet, field, degree) for t in row] for row in obj["entries"]
        ]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad matrix JSON: {exc}") from exc
    pm = PolyMatrix(entries)
    if kind == "skew-linear":
        return skew_linear(pm)
    if kind == "pencil":
        return pm
    raise FormatError(f"unknown matrix kind {kind!r}")
