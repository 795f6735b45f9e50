"""Exact coefficient fields: the rationals and prime fields F_p.

Scalars are plain Python objects: ``fractions.Fraction`` for the
rationals (always in lowest terms with positive denominator), ``int`` in
``[0, p)`` for F_p. A ``Field`` instance bundles the arithmetic so that
matrix and polynomial code stays field-agnostic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .errors import FormatError, RangeError

#: Witness bases making Miller-Rabin deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise RangeError(f"field modulus must be prime, got {p}")
        self.p = p

    # -- identity ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- constants and conversions ------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def from_int(self, a: int):
        return Fraction(a) if self.p is None else a % self.p

    def char_exceeds(self, k: int) -> bool:
        """True when the characteristic is 0 or greater than ``k``."""
        return self.p is None or self.p > k

    # -- arithmetic ----------------------------------------------------

    def add(self, a, b):
        return (a + b) if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return (a - b) if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return (a * b) if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    # -- text and JSON -------------------------------------------------

    def format_scalar(self, a) -> str:
        return str(a)

    def parse_scalar(self, text: str):
        """Parse ``"3"``, ``"-2/7"``; fractions over F_p use inversion."""
        text = text.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad scalar literal {text!r}") from exc
        if self.p is None:
            return q
        return self.mul(q.numerator % self.p, self.inv(q.denominator % self.p))

    def scalar_to_json(self, a):
        if self.p is not None:
            return a
        if a.denominator == 1:
            return int(a)
        return str(a)

    def scalar_from_json(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, (int, str)):
            raise FormatError(f"bad scalar JSON {obj!r}")
        if isinstance(obj, int):
            return self.from_int(obj)
        return self.parse_scalar(obj)

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "q"}
        return {"kind": "fp", "p": self.p}

    @staticmethod
    def from_json(obj: Any) -> "Field":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FormatError(f"bad field JSON {obj!r}")
        if obj["kind"] == "q":
            return QQ
        if obj["kind"] == "fp":
            return Field(int(obj["p"]))
        raise FormatError(f"unknown field kind {obj['kind']!r}")


#: The rational field, shared instance.
QQ = Field()


def GF(p: int) -> Field:
    """The prime field F_p (p must be prime)."""
    return Field(p)
