"""Graded polynomial rings with fixed monomial order.

Three variable alphabets appear throughout: ``y0..y(m-1)`` for the base
coordinates, ``d0..d(m-1)`` for the dual (operator) coordinates, and
``x0..x(n-1)`` for the ambient projective space of a pencil. Homogeneous
pieces are stored densely over the graded-lex monomial basis (larger
exponent on the earlier variable first: ``y0^2 > y0*y1 > ... > y2^2``).
No Groebner machinery anywhere; every question is a linear-algebra
question about one graded slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import AlphabetMismatch, DegreeMismatch, FormatError, UsageError
from .fields import Field
from .linalg import Matrix, column_space_canonical, solve

_PREFIX = {"Y": "y", "D": "d", "X": "x"}


@dataclass(frozen=True)
class Alphabet:
    """A named tuple of variables, e.g. y0..y2."""

    key: str
    nvars: int

    def __post_init__(self):
        if self.key not in _PREFIX:
            raise UsageError(f"unknown alphabet key {self.key!r}")
        if self.nvars < 1:
            raise UsageError("alphabet needs at least one variable")

    @property
    def prefix(self) -> str:
        return _PREFIX[self.key]

    def dual(self) -> "Alphabet":
        if self.key == "Y":
            return Alphabet("D", self.nvars)
        if self.key == "D":
            return Alphabet("Y", self.nvars)
        raise UsageError("the x alphabet has no dual")

    def var_name(self, i: int) -> str:
        return f"{self.prefix}{i}"


def y_vars(m: int = 3) -> Alphabet:
    return Alphabet("Y", m)


def d_vars(m: int = 3) -> Alphabet:
    return Alphabet("D", m)


def x_vars(n: int) -> Alphabet:
    return Alphabet("X", n)


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total degree ``degree`` in graded-lex order."""
    if degree < 0:
        return ()

    def gen(k: int, d: int) -> Iterator[tuple[int, ...]]:
        if k == 1:
            yield (d,)
            return
        for e in range(d, -1, -1):
            for rest in gen(k - 1, d - e):
                yield (e,) + rest

    return tuple(gen(nvars, degree))


@lru_cache(maxsize=None)
def mono_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(nvars, degree))}


def dim_homog(nvars: int, degree: int) -> int:
    """Dimension of the degree-``degree`` homogeneous piece."""
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


class HomogPoly:
    """A homogeneous polynomial: dense coefficients over the grlex basis."""

    __slots__ = ("alphabet", "degree", "field", "coeffs")

    def __init__(self, alphabet: Alphabet, degree: int, field: Field, coeffs: Sequence):
        if degree < 0:
            raise DegreeMismatch("negative degree")
        coeffs = tuple(coeffs)
        if len(coeffs) != dim_homog(alphabet.nvars, degree):
            raise DegreeMismatch("coefficient vector has wrong length")
        self.alphabet = alphabet
        self.degree = degree
        self.field = field
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, degree: int, field: Field) -> "HomogPoly":
        return cls(alphabet, degree, field, [field.zero] * dim_homog(alphabet.nvars, degree))

    @classmethod
    def variable(cls, alphabet: Alphabet, i: int, field: Field) -> "HomogPoly":
        if not 0 <= i < alphabet.nvars:
            raise UsageError(f"no variable index {i}")
        expo = tuple(1 if j == i else 0 for j in range(alphabet.nvars))
        return cls.from_terms(alphabet, 1, field, [(field.one, expo)])

    @classmethod
    def from_terms(
        cls,
        alphabet: Alphabet,
        degree: int,
        field: Field,
        terms: Iterable[tuple[object, tuple[int, ...]]],
    ) -> "HomogPoly":
        coeffs = [field.zero] * dim_homog(alphabet.nvars, degree)
        idx = mono_index(alphabet.nvars, degree)
        for c, expo in terms:
            expo = tuple(expo)
            if expo not in idx:
                raise DegreeMismatch(f"exponent {expo} is not homogeneous of degree {degree}")
            coeffs[idx[expo]] = field.add(coeffs[idx[expo]], c)
        return cls(alphabet, degree, field, coeffs)

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coeff(self, expo: Sequence[int]):
        return self.coeffs[mono_index(self.alphabet.nvars, self.degree)[tuple(expo)]]

    def terms(self) -> Iterator[tuple[object, tuple[int, ...]]]:
        """Nonzero (coefficient, exponent) pairs in grlex order."""
        basis = monomials(self.alphabet.nvars, self.degree)
        for c, e in zip(self.coeffs, basis):
            if c != 0:
                yield c, e

    def _check_compatible(self, other: "HomogPoly", same_degree: bool) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet} vs {other.alphabet}")
        if self.field != other.field:
            raise UsageError("field mismatch")
        if same_degree and self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other, same_degree=True)
        f = self.field
        return HomogPoly(
            self.alphabet,
            self.degree,
            f,
            [f.add(a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other, same_degree=True)
        f = self.field
        return HomogPoly(
            self.alphabet,
            self.degree,
            f,
            [f.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __neg__(self) -> "HomogPoly":
        f = self.field
        return HomogPoly(self.alphabet, self.degree, f, [f.neg(a) for a in self.coeffs])

    def scale(self, c) -> "HomogPoly":
        f = self.field
        return HomogPoly(self.alphabet, self.degree, f, [f.mul(c, a) for a in self.coeffs])

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other, same_degree=False)
        f = self.field
        nvars = self.alphabet.nvars
        tdeg = self.degree + other.degree
        out = [f.zero] * dim_homog(nvars, tdeg)
        idx = mono_index(nvars, tdeg)
        p = f.p
        sterms = list(self.terms())
        oterms = list(other.terms())
        for c1, e1 in sterms:
            for c2, e2 in oterms:
                e = tuple(a + b for a, b in zip(e1, e2))
                i = idx[e]
                if p is None:
                    out[i] = out[i] + c1 * c2
                else:
                    out[i] = (out[i] + c1 * c2) % p
        return HomogPoly(self.alphabet, tdeg, f, out)

    def evaluate(self, point: Sequence):
        """Value at a point given as field scalars in variable order."""
        if len(point) != self.alphabet.nvars:
            raise DegreeMismatch("point has wrong length")
        f = self.field
        p = f.p
        total = f.zero
        for c, expo in self.terms():
            v = c
            for x, e in zip(point, expo):
                if e:
                    v = f.mul(v, x ** e if p is None else pow(x, e, p))
            total = f.add(total, v)
        return total

    def leading_normalized(self) -> "HomogPoly":
        """Scale so the first nonzero grlex coefficient is 1."""
        for c in self.coeffs:
            if c != 0:
                return self.scale(self.field.inv(c))
        return self

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HomogPoly)
            and other.alphabet == self.alphabet
            and other.degree == self.degree
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.degree, self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"HomogPoly({format_poly(self)!r})"


# -- text format -------------------------------------------------------------


def _format_monomial(alphabet: Alphabet, expo: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(expo):
        if e == 1:
            parts.append(alphabet.var_name(i))
        elif e > 1:
            parts.append(f"{alphabet.var_name(i)}^{e}")
    return "*".join(parts)


def format_poly(poly: HomogPoly) -> str:
    """Canonical text form, e.g. ``3*y0^2*y1 - y2^3``; zero prints ``0``."""
    field = poly.field
    pieces = []
    for c, expo in poly.terms():
        mono = _format_monomial(poly.alphabet, expo)
        txt = field.format_scalar(c)
        neg = txt.startswith("-")
        mag = txt[1:] if neg else txt
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def parse_poly(
    text: str,
    alphabet: Alphabet,
    field: Field,
    degree: int | None = None,
) -> HomogPoly:
    """Parse the canonical text form.

    ``degree`` may be omitted when the text has at least one term; it is
    required to give the zero polynomial a grade.
    """
    src = text.replace(" ", "")
    if not src:
        raise FormatError("empty polynomial text")
    terms: list[tuple[object, tuple[int, ...]]] = []
    # split into signed chunks
    chunks: list[str] = []
    cur = []
    for i, ch in enumerate(src):
        if ch in "+-" and i > 0 and src[i - 1] not in "+-/^*":
            chunks.append("".join(cur))
            cur = [ch]
        else:
            cur.append(ch)
    chunks.append("".join(cur))
    prefix = alphabet.prefix
    for chunk in chunks:
        if chunk in ("", "+"):
            continue
        sign = 1
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise FormatError(f"dangling sign in {text!r}")
        coeff = field.one
        expo = [0] * alphabet.nvars
        deg = 0
        for factor in body.split("*"):
            if not factor:
                raise FormatError(f"empty factor in {text!r}")
            if factor[0].isdigit() or factor[0] == ".":
                coeff = field.mul(coeff, field.parse_scalar(factor))
                continue
            if not factor.startswith(prefix):
                raise FormatError(f"unknown variable in factor {factor!r}")
            var, _, exp_txt = factor.partition("^")
            try:
                vi = int(var[len(prefix):])
            except ValueError as exc:
                raise FormatError(f"bad variable {var!r}") from exc
            if not 0 <= vi < alphabet.nvars:
                raise FormatError(f"variable index out of range in {factor!r}")
            e = 1
            if exp_txt:
                try:
                    e = int(exp_txt)
                except ValueError as exc:
                    raise FormatError(f"bad exponent in {factor!r}") from exc
                if e < 0:
                    raise FormatError("negative exponent")
            expo[vi] += e
            deg += e
        if sign < 0:
            coeff = field.neg(coeff)
        if degree is None:
            degree = deg
        if deg != degree and coeff != 0:
            raise DegreeMismatch(f"term of degree {deg} in degree-{degree} polynomial")
        if body == "0" or (deg == 0 and coeff == 0):
            continue
        terms.append((coeff, tuple(expo)))
    if degree is None:
        raise FormatError("cannot infer the degree of the zero polynomial")
    return HomogPoly.from_terms(alphabet, degree, field, terms)


# -- JSON format --------------------------------------------------------------


def poly_to_json(poly: HomogPoly) -> dict:
    field = poly.field
    return {
        "alphabet": poly.alphabet.key,
        "nvars": poly.alphabet.nvars,
        "degree": poly.degree,
        "field": field.to_json(),
        "terms": [[field.scalar_to_json(c), list(e)] for c, e in poly.terms()],
    }


def poly_from_json(obj: dict, field: Field | None = None) -> HomogPoly:
    try:
        alphabet = Alphabet(str(obj["alphabet"]), int(obj["nvars"]))
        degree = int(obj["degree"])
        if field is None:
            field = Field.from_json(obj["field"])
        terms = [(field.scalar_from_json(c), tuple(int(x) for x in e)) for c, e in obj["terms"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad polynomial JSON: {exc}") from exc
    return HomogPoly.from_terms(alphabet, degree, field, terms)


# -- graded slices -------------------------------------------------------------


class GradedSlice:
    """A subspace of one homogeneous piece, stored canonically.

    The basis matrix has the monomial coefficients as columns in reduced
    column echelon form, so two slices are equal as subspaces exactly
    when their matrices are equal.
    """

    __slots__ = ("alphabet", "degree", "field", "matrix")

    def __init__(self, alphabet: Alphabet, degree: int, field: Field, matrix: Matrix):
        if matrix.nrows != dim_homog(alphabet.nvars, degree):
            raise DegreeMismatch("slice matrix has wrong ambient dimension")
        self.alphabet = alphabet
        self.degree = degree
        self.field = field
        self.matrix = matrix

    @classmethod
    def from_polys(
        cls,
        polys: Sequence[HomogPoly],
        alphabet: Alphabet | None = None,
        degree: int | None = None,
        field: Field | None = None,
    ) -> "GradedSlice":
        if polys:
            alphabet = polys[0].alphabet
            degree = polys[0].degree
            field = polys[0].field
            for q in polys[1:]:
                polys[0]._check_compatible(q, same_degree=True)
        if alphabet is None or degree is None or field is None:
            raise UsageError("empty slice needs explicit alphabet, degree, field")
        amb = dim_homog(alphabet.nvars, degree)
        raw = Matrix.from_columns(field, [list(q.coeffs) for q in polys], amb)
        return cls(alphabet, degree, field, column_space_canonical(raw))

    @classmethod
    def from_matrix(cls, alphabet: Alphabet, degree: int, field: Field, raw: Matrix) -> "GradedSlice":
        return cls(alphabet, degree, field, column_space_canonical(raw))

    @classmethod
    def empty(cls, alphabet: Alphabet, degree: int, field: Field) -> "GradedSlice":
        amb = dim_homog(alphabet.nvars, degree)
        return cls(alphabet, degree, field, Matrix(field, [[] for _ in range(amb)], 0))

    @classmethod
    def full(cls, alphabet: Alphabet, degree: int, field: Field) -> "GradedSlice":
        amb = dim_homog(alphabet.nvars, degree)
        return cls(alphabet, degree, field, Matrix.identity(field, amb))

    @property
    def dim(self) -> int:
        return self.matrix.ncols

    @property
    def ambient_dim(self) -> int:
        return self.matrix.nrows

    def basis_polys(self) -> list[HomogPoly]:
        return [
            HomogPoly(self.alphabet, self.degree, self.field, self.matrix.column(j))
            for j in range(self.matrix.ncols)
        ]

    def contains(self, poly: HomogPoly) -> bool:
        if poly.alphabet != self.alphabet or poly.degree != self.degree:
            return False
        return solve(self.matrix, list(poly.coeffs)) is not None

    def sum(self, other: "GradedSlice") -> "GradedSlice":
        if (self.alphabet, self.degree, self.field) != (other.alphabet, other.degree, other.field):
            raise UsageError("slice sum over mismatched gradings")
        cols = self.matrix.columns() + other.matrix.columns()
        raw = Matrix.from_columns(self.field, cols, self.matrix.nrows)
        return GradedSlice(self.alphabet, self.degree, self.field, column_space_canonical(raw))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GradedSlice)
            and other.alphabet == self.alphabet
            and other.degree == self.degree
            and other.field == self.field
            and other.matrix == self.matrix
        )

    def __hash__(self) -> int:  # pragma: no cover
        return hash((self.alphabet, self.degree, self.field))

    def __repr__(self) -> str:
        return f"GradedSlice({self.alphabet.key}{self.alphabet.nvars}, deg={self.degree}, dim={self.dim})"

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet.key,
            "nvars": self.alphabet.nvars,
            "degree": self.degree,
            "field": self.field.to_json(),
            "basis": [format_poly(q) for q in self.basis_polys()],
        }

    @staticmethod
    def from_json(obj: dict) -> "GradedSlice":
        field = Field.from_json(obj["field"])
        alphabet = Alphabet(str(obj["alphabet"]), int(obj["nvars"]))
        degree = int(obj["degree"])
        polys = [parse_poly(t, alphabet, field, degree) for t in obj["basis"]]
        return GradedSlice.from_polys(polys, alphabet, degree, field)


def slices_equal(a: GradedSlice, b: GradedSlice) -> bool:
    """Subspace equality (same grading required)."""
    if (a.alphabet, a.degree, a.field) != (b.alphabet, b.degree, b.field):
        raise UsageError("comparing slices of different gradings")
    return a.matrix == b.matrix


def slice_of_products(slc: GradedSlice, target_degree: int) -> GradedSlice:
    """The slice spanned by (basis) x (all monomials of the gap degree).

    A target degree strictly below the slice degree yields the zero
    slice by convention.
    """
    if target_degree < slc.degree:
        return GradedSlice.empty(slc.alphabet, target_degree, slc.field)
    if target_degree == slc.degree:
        return slc
    gap = target_degree - slc.degree
    field = slc.field
    prods = []
    for q in slc.basis_polys():
        for expo in monomials(slc.alphabet.nvars, gap):
            mono = HomogPoly.from_terms(slc.alphabet, gap, field, [(field.one, expo)])
            prods.append(q * mono)
    if not prods:
        return GradedSlice.empty(slc.alphabet, target_degree, field)
    return GradedSlice.from_polys(prods)
