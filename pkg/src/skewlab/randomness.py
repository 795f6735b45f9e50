"""Seeded randomness with a stable, named, splittable generator.

SplitMix64 drives every random draw so that seeds mean the same thing on
every platform and Python version; output JSON records the algorithm
name. Draw order is part of the stability contract and is documented on
each sampler.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DegenerateForm, InternalError, UsageError
from .fields import Field
from .rings import Alphabet, HomogPoly, dim_homog

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

#: Coefficient box for rational draws.
RATIONAL_BOX = (-9, 9)

ALGORITHM = "splitmix64"


class SplitMix64:
    """The SplitMix64 generator; tiny, stable, splittable."""

    name = ALGORITHM

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform draw in [0, bound); bound must be positive."""
        if bound <= 0:
            raise UsageError("bound must be positive")
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform draw in the inclusive range [lo, hi]."""
        if hi < lo:
            raise UsageError("empty range")
        return lo + self.below(hi - lo + 1)

    def spawn(self) -> "SplitMix64":
        """Independent child stream; advances this generator once."""
        return SplitMix64(self.next_u64() ^ _GOLDEN)


def random_scalar(field: Field, rng: SplitMix64):
    """One coefficient: uniform in [-9, 9] over QQ, uniform over F_p."""
    if field.p is None:
        return Fraction(rng.randint(*RATIONAL_BOX))
    return rng.below(field.p)


def random_form(alphabet: Alphabet, degree: int, field: Field, rng: SplitMix64) -> HomogPoly:
    """Dense random form; coefficients drawn in grlex basis order."""
    n = dim_homog(alphabet.nvars, degree)
    return HomogPoly(alphabet, degree, field, [random_scalar(field, rng) for _ in range(n)])


def random_nonzero_form(
    alphabet: Alphabet, degree: int, field: Field, rng: SplitMix64
) -> HomogPoly:
    for _ in range(128):
        f = random_form(alphabet, degree, field, rng)
        if not f.is_zero():
            return f
    raise InternalError("failed to draw a nonzero form")  # pragma: no cover


def random_point(nvars: int, field: Field, rng: SplitMix64) -> tuple:
    """A nonzero coordinate tuple; coordinates drawn in index order."""
    for _ in range(128):
        pt = tuple(random_scalar(field, rng) for _ in range(nvars))
        if any(c != 0 for c in pt):
            return pt
    raise InternalError("failed to draw a nonzero point")  # pragma: no cover


def random_linear_form(alphabet: Alphabet, field: Field, rng: SplitMix64) -> HomogPoly:
    return random_form(alphabet, 1, field, rng)


def random_skew_linear(n: int, m: int, field: Field, rng: SplitMix64):
    """Random skew matrix of linear forms in ``m`` base variables.

    Entries above the diagonal are drawn row-major, each as a dense
    linear form; the lower triangle mirrors with a sign, the diagonal is
    zero. Returns the entry grid (list of lists of ``HomogPoly``).
    """
    alphabet = Alphabet("Y", m)
    zero = HomogPoly.zero(alphabet, 1, field)
    entries = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            f = random_linear_form(alphabet, field, rng)
            entries[i][j] = f
            entries[j][i] = -f
    return entries


def random_scalar_skew(n: int, field: Field, rng: SplitMix64):
    """Random skew scalar matrix (row-major upper triangle draws)."""
    from .linalg import Matrix

    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = random_scalar(field, rng)
            rows[i][j] = c
            rows[j][i] = field.neg(c)
    return Matrix(field, rows, n)


def random_invertible(n: int, field: Field, rng: SplitMix64):
    """Random invertible constant matrix (entry draws row-major)."""
    from .linalg import Matrix, rank

    for _ in range(128):
        rows = [[random_scalar(field, rng) for _ in range(n)] for _ in range(n)]
        mat = Matrix(field, rows, n)
        if rank(mat) == n:
            return mat
    raise InternalError("failed to draw an invertible matrix")  # pragma: no cover


def random_nondegenerate_dual_form(
    degree: int, field: Field, rng: SplitMix64, nvars: int = 3, max_tries: int = 64
) -> HomogPoly:
    """Random dual form with full middle catalecticant rank."""
    from .apolarity import is_nondegenerate

    alphabet = Alphabet("D", nvars)
    for _ in range(max_tries):
        f = random_form(alphabet, degree, field, rng)
        if not f.is_zero() and is_nondegenerate(f):
            return f
    raise DegenerateForm(
        f"no nondegenerate degree-{degree} form found in {max_tries} draws"
    )


def describe(seed: int) -> dict:
    """The JSON stanza recorded in every seeded output."""
    return {"algorithm": ALGORITHM, "seed": seed}
