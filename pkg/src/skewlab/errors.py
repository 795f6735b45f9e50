"""Typed error hierarchy.

Three families, matching the CLI exit-code contract:

* ``UsageError`` (exit 2): violated argument or format contracts.
* ``GenericityError`` (exit 3): mathematically meaningful failures on
  degenerate or unlucky input; retrying with another seed, prime, or
  input is the expected remedy.
* ``InternalError`` (exit 4): invariants that can only break through a
  bug; never expected on any input.
"""

from __future__ import annotations


class SkewlabError(Exception):
    """Base class for every error raised by this package."""


class UsageError(SkewlabError, ValueError):
    """An argument, range, or format contract was violated."""


class RangeError(UsageError):
    """A numeric parameter is outside its documented range."""


class AlphabetMismatch(UsageError):
    """Operands live over different variable alphabets."""


class DegreeMismatch(UsageError):
    """Operands have incompatible homogeneous degrees."""


class OddDegree(UsageError):
    """An even degree was required (catalecticant middle, flips)."""


class OddOrder(UsageError):
    """Pfaffians require even matrix order."""


class EvenOrder(UsageError):
    """Sub-Pfaffian vectors require odd matrix order."""


class NotSkew(UsageError):
    """A matrix expected to be skew-symmetric is not."""


class FormatError(UsageError):
    """Text or JSON input does not match the documented file formats."""


class SingularMatrix(UsageError):
    """A matrix expected to be invertible is singular."""


# Name used by the congruence-transport contract.
SingularA = SingularMatrix


class GenericityError(SkewlabError):
    """Degenerate or non-generic input; retry with different data."""


class NotGorensteinSocle(GenericityError):
    """The joint annihilator in the requested degree is not a line."""


class DegenerateInput(GenericityError):
    """A matrix input fails the genericity needed by the construction."""


class DegenerateForm(GenericityError):
    """A form input fails the nondegeneracy needed by the construction."""


class DegenerateG(DegenerateForm):
    """The projection center construction received a degenerate form."""


class SyzygyDefect(GenericityError):
    """The linear-syzygy space does not have the expected dimension."""


class SkewNormalizationFailure(GenericityError):
    """No invertible constant recombination makes the syzygy matrix skew."""


class NoPointsFound(GenericityError):
    """A finite-field scan exhausted the point set without a hit."""


class InternalError(SkewlabError):
    """An internal invariant failed; this signals a bug, not bad input."""


class AmbiguousChase(InternalError):
    """A cohomology chase expected to be forced left slack."""
