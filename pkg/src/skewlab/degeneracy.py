"""Rank-drop loci of linear pencils and their parametrizations.

An n x m pencil M of linear forms in x0..x(n-1) drops rank on a
subvariety of projective (n-1)-space.  For m = 3 and odd n the signed
sub-Pfaffians of the flipped skew matrix parametrize that locus from the
plane; for even n the plane sees a Pfaffian curve and the locus is
swept by the kernel lines over its points.  This module computes the
numeric profile of those loci, samples them exactly, and builds the
projection-of-Veronese model with its certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .apolarity import mirror, partials_slice, perp_slice
from .correspond import Certificate, form_to_matrix
from .errors import (
    DegenerateG,
    DegenerateInput,
    InternalError,
    NoPointsFound,
    RangeError,
)
from .linalg import Matrix, det, kernel_basis, rank, solve
from .randomness import SplitMix64, random_point
from .rings import GradedSlice, HomogPoly, dim_homog, poly_to_json
from .skew import (
    PolyMatrix,
    evaluate_matrix,
    pfaffian_poly,
    skew_linear,
    sub_pfaffians,
    tensor_flip,
)


# -- numeric profile --------------------------------------------------------


@dataclass
class LocusProfile:
    """Expected dimensions for the rank-drop loci of a generic pencil."""

    n: int
    m: int
    ambient_dim: int
    dim: int
    codim: int
    corank_two_codim: int
    sing_codim: int
    smooth: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "codim": self.codim,
            "corank_two_codim": self.corank_two_codim,
            "sing_codim": self.sing_codim,
            "smooth": self.smooth,
        }


def locus_profile(n: int, m: int) -> LocusProfile:
    """Dimension bookkeeping for the rank <= m-1 locus in P^(n-1).

    The deeper rank <= m-2 locus is the singular set of the first; it is
    empty (so the locus is smooth) exactly when n > 2m - 3.
    """
    if not (2 < m < n - 1):
        raise RangeError(f"need 2 < m < n - 1, got m={m}, n={n}")
    return LocusProfile(
        n=n,
        m=m,
        ambient_dim=n - 1,
        dim=m - 1,
        codim=n - m,
        corank_two_codim=2 * (n - m + 1),
        sing_codim=n + 2 - m,
        smooth=n > 2 * m - 3,
    )


# -- incidence -----------------------------------------------------------------


@dataclass
class IncidenceResult:
    rank: int
    n_minors: int
    minors_zero: bool
    ok: bool

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "n_minors": self.n_minors,
            "minors_zero": self.minors_zero,
            "ok": self.ok,
        }


def _det3(r0, r1, r2, p):
    v = (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )
    return v if p is None else v % p


def incidence_check(pencil: PolyMatrix, point) -> IncidenceResult:
    """Exact rank-drop test for a point against a tall pencil.

    Evaluates the pencil, computes the rank, and independently checks
    that every maximal minor vanishes; the two routes must agree.
    """
    if pencil.nrows <= pencil.ncols:
        raise RangeError("incidence expects a tall pencil")
    a = evaluate_matrix(pencil, point)
    r = rank(a)
    m = pencil.ncols
    p = pencil.field.p
    zero = pencil.field.zero
    all_zero = True
    n_minors = 0
    for rows_sel in combinations(range(a.nrows), m):
        n_minors += 1
        if m == 3:
            v = _det3(a.rows[rows_sel[0]], a.rows[rows_sel[1]], a.rows[rows_sel[2]], p)
        else:
            v = det(Matrix(pencil.field, [a.rows[i] for i in rows_sel], m))
        if v != zero:
            all_zero = False
    ok = r < m
    if ok != all_zero:
        raise InternalError("rank and minor tests disagree")
    return IncidenceResult(rank=r, n_minors=n_minors, minors_zero=all_zero, ok=ok)


# -- odd-order parametrization ----------------------------------------------------


def parametrization_points(
    pencil: PolyMatrix, count: int, rng: SplitMix64
) -> tuple[list[tuple[tuple, tuple]], int]:
    """Sample (plane point, image point) pairs from an odd skew pencil.

    Each random plane point nu is sent to the signed sub-Pfaffian vector
    evaluated at nu, which lies in the rank-drop locus of the flipped
    pencil.  Points where the whole vector vanishes are skipped and
    counted; too many skips raise ``DegenerateInput``.
    """
    pm = skew_linear(pencil)
    n = pm.nrows
    if n % 2 == 0:
        raise RangeError("parametrization needs odd order")
    if pm.alphabet.nvars != 3:
        raise RangeError("parametrization needs three base variables")
    field = pm.field
    _pfs, signed = sub_pfaffians(pm, check=False)
    out: list[tuple[tuple, tuple]] = []
    skipped = 0
    budget = 20 * count + 100
    while len(out) < count:
        if skipped >= budget:
            raise DegenerateInput(
                "signed sub-Pfaffians vanish at too many sample points"
            )
        nu = random_point(3, field, rng)
        x = tuple(q.evaluate(nu) for q in signed)
        if all(v == field.zero for v in x):
            skipped += 1
            continue
        out.append((nu, x))
    return out, skipped


# -- projection of the Veronese ---------------------------------------------------


@dataclass
class ProjectionDatum:
    """Center and image data for projecting a Veronese embedding.

    ``center`` is the span of the mid-order partials of ``g`` and
    ``complement`` the degree (n-1)/2 annihilator; together they fill
    the full linear system of degree (n-1)/2, which is the direct-sum
    certificate.
    """

    n: int
    r: int
    g: HomogPoly
    center: GradedSlice
    complement: GradedSlice
    direct_sum_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "g": poly_to_json(self.g),
            "center_dim": self.center.dim,
            "complement_dim": self.complement.dim,
            "center": self.center.to_json(),
            "complement": self.complement.to_json(),
            "direct_sum_ok": self.direct_sum_ok,
        }


def veronese_projection(g: HomogPoly) -> ProjectionDatum:
    """Projection data for the degree (n-1)/2 Veronese away from g's partials.

    ``g`` must be a form of even degree n-3 in y0, y1, y2.  The center
    has dimension (n-1)(n-3)/8 and the annihilator complement dimension
    n; failures of either count or of the direct sum raise
    ``DegenerateG``.
    """
    if g.alphabet.key != "Y":
        raise RangeError("projection expects a form in the y alphabet")
    if g.alphabet.nvars != 3:
        raise RangeError("projection needs three base variables")
    k = g.degree
    n = k + 3
    if k < 2 or k % 2:
        raise RangeError(f"need even positive degree, got {k}")
    if not g.field.char_exceeds(k):
        raise RangeError(f"field characteristic must exceed {k}")
    if g.is_zero():
        raise DegenerateG("zero form")

    half = (n - 1) // 2
    center = partials_slice(g, (n - 5) // 2)
    complement = perp_slice(mirror(g), half)
    center_dim = (n - 1) * (n - 3) // 8
    if center.dim != center_dim:
        raise DegenerateG(
            f"partial span has dimension {center.dim}, expected {center_dim}"
        )
    if complement.dim != n:
        raise DegenerateG(
            f"annihilator has dimension {complement.dim}, expected {n}"
        )
    full = dim_homog(3, half)
    direct = center.sum(complement).dim == full
    if not direct:
        raise DegenerateG("center and annihilator do not span the full system")
    return ProjectionDatum(
        n=n,
        r=full - 1,
        g=g,
        center=center,
        complement=complement,
        direct_sum_ok=direct,
    )


def verify_in_image(datum: ProjectionDatum) -> tuple[PolyMatrix, Matrix, Certificate]:
    """Identify the projected Veronese with a sub-Pfaffian image.

    Builds the skew pencil of the dual form, then expresses the
    annihilator basis in the sub-Pfaffian basis; the change of basis
    must be invertible.  Returns the pencil, the change of basis, and
    the pencil's certificate.
    """
    pencil, cert = form_to_matrix(mirror(datum.g))
    pfs, _signed = sub_pfaffians(pencil, check=False)
    field = datum.g.field
    ambient = dim_homog(3, (datum.n - 1) // 2)
    p_mat = Matrix.from_columns(field, [list(q.coeffs) for q in pfs], ambient)
    cols = []
    for b in datum.complement.basis_polys():
        sol = solve(p_mat, list(b.coeffs))
        if sol is None:
            raise InternalError("annihilator basis not in the sub-Pfaffian span")
        cols.append(sol)
    a_mat = Matrix.from_columns(field, cols, datum.n)
    if det(a_mat) == field.zero:
        raise InternalError("sub-Pfaffian change of basis is singular")
    return pencil, a_mat, cert


# -- even-order scroll sampling ------------------------------------------------


@dataclass
class ScrollPoint:
    nu: tuple
    kernel: tuple
    x_samples: list
    incidence_ranks: list

    def to_json(self) -> dict:
        return {
            "nu": list(self.nu),
            "kernel": [list(v) for v in self.kernel],
            "x_samples": [list(v) for v in self.x_samples],
            "incidence_ranks": list(self.incidence_ranks),
        }


@dataclass
class ScrollSample:
    n: int
    p: int
    curve_degree: int
    points: list
    skipped_corank: int
    scanned: int
    exhausted: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "curve_degree": self.curve_degree,
            "points": [pt.to_json() for pt in self.points],
            "skipped_corank": self.skipped_corank,
            "scanned": self.scanned,
            "exhausted": self.exhausted,
        }


def _pf_chart_tables(pf: HomogPoly):
    """Coefficient tables of the Pfaffian on the three standard charts.

    Chart one: rows[k][j] is the coefficient of a^j b^k in pf(1, a, b).
    Chart two: row[k] is the coefficient of b^k in pf(0, 1, b).
    Chart three: the constant pf(0, 0, 1).
    """
    d = pf.degree
    rows = [[0] * (d - k + 1) for k in range(d + 1)]
    for c, (_i, j, k) in pf.terms():
        rows[k][j] = c
    line = [pf.coeff((0, d - k, k)) for k in range(d + 1)]
    last = pf.coeff((0, 0, d))
    return rows, line, last


def _horner(coeffs, x, p):
    """Evaluate sum coeffs[i] x^i with coefficients listed by degree."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def even_scroll_sample(
    pencil: PolyMatrix, count: int = 5, per_point: int = 3
) -> ScrollSample:
    """Sample the rank-drop locus of an even skew pencil over a prime field.

    Scans the plane in a fixed chart order for points of the Pfaffian
    curve, keeps those of corank exactly two, and samples ``per_point``
    points on each kernel line.  Every sample must pass the incidence
    check.  ``NoPointsFound`` is raised only when the full plane is
    exhausted without a single curve point of corank two.
    """
    pm = skew_linear(pencil)
    n = pm.nrows
    if n % 2 or n < 4:
        raise RangeError("scroll sampling needs even order at least 4")
    if pm.alphabet.nvars != 3:
        raise RangeError("scroll sampling needs three base variables")
    field = pm.field
    if field.is_rational:
        raise RangeError("scroll sampling needs a finite field")
    p = field.p
    per_point = min(per_point, p)

    pf = pfaffian_poly(pm, check=False)
    if pf.is_zero():
        raise DegenerateInput("pencil has identically zero Pfaffian")
    flipped = tensor_flip(pm)

    rows, line, last = _pf_chart_tables(pf)
    d = pf.degree

    points: list[ScrollPoint] = []
    skipped = 0
    scanned = 0

    def visit(nu) -> bool:
        """Process one curve point; returns True when enough points."""
        nonlocal skipped
        mat = evaluate_matrix(pm, nu)
        ker = kernel_basis(mat)
        if ker.ncols != 2:
            skipped += 1
            return False
        b1 = ker.column(0)
        b2 = ker.column(1)
        xs = []
        ranks = []
        for t in range(per_point):
            x = tuple((v1 + t * v2) % p for v1, v2 in zip(b1, b2))
            res = incidence_check(flipped, x)
            if not res.ok:
                raise InternalError("kernel line sample failed incidence")
            xs.append(x)
            ranks.append(res.rank)
        points.append(
            ScrollPoint(nu=nu, kernel=(tuple(b1), tuple(b2)), x_samples=xs, incidence_ranks=ranks)
        )
        return len(points) >= count

    done = False
    for a in range(p):
        if done:
            break
        coef_b = [_horner(rows[k], a, p) for k in range(d + 1)]
        for b in range(p):
            scanned += 1
            if _horner(coef_b, b, p) == 0:
                if visit((1, a, b)):
                    done = True
                    break
    if not done:
        for b in range(p):
            scanned += 1
            if _horner(line, b, p) == 0:
                if visit((0, 1, b)):
                    done = True
                    break
    if not done:
        scanned += 1
        if last % p == 0:
            done = visit((0, 0, 1))

    if not points:
        raise NoPointsFound(
            f"Pfaffian curve has no corank-two points over F_{p}"
        )
    return ScrollSample(
        n=n,
        p=p,
        curve_degree=d,
        points=points,
        skipped_corank=skipped,
        scanned=scanned,
        exhausted=not done,
    )
