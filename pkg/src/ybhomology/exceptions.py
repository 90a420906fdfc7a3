"""Error hierarchy for ybhomology.

Layer: Errors (bottom of the stack)
May only import from: metaflow.exception

Every error raised for bad input or a violated precondition derives from
``YBHException``. Mathematical check failures are *not* exceptions: they
are reported through the report objects of ``algebra``, ``complex`` and
``runner`` so callers always see the witness.
"""

from __future__ import annotations

from typing import Any

from metaflow.exception import MetaflowException


class YBHException(MetaflowException):
    headline = "Yang-Baxter homology error"

    def __init__(self, msg: str = "", witness: Any = None) -> None:
        super().__init__(msg)
        self.witness = witness


# -- algebra ----------------------------------------------------------------


class NotAUnit(YBHException):
    headline = "Parameter is not a unit"


class ConditionFails(YBHException):
    headline = "Alexander condition fails"


class ShapeMismatch(YBHException):
    headline = "Table shape mismatch"


class EntryOutOfRange(YBHException):
    headline = "Table entry out of range"


class NotBijective(YBHException):
    headline = "R is not bijective"


class BiquandleFileError(YBHException):
    headline = "Invalid biquandle file"


# -- complex ----------------------------------------------------------------


class IndexOutOfRange(YBHException):
    headline = "Face index out of range"


class BarUnavailable(YBHException):
    headline = "Operator is not a biquandle"


class NotYangBaxter(YBHException):
    headline = "Operator does not satisfy the Yang-Baxter equation"


# -- smith ------------------------------------------------------------------


class NotAComplex(YBHException):
    headline = "Boundary maps do not compose to zero"


class NotACycle(YBHException):
    headline = "Vector is not a cycle"


class NotPrime(YBHException):
    headline = "Coefficient is not prime"


# -- knots ------------------------------------------------------------------


class DiagramError(YBHException):
    headline = "Invalid diagram"

    def __init__(self, msg: str = "", location: str | None = None) -> None:
        prefix = f"{location}: " if location else ""
        super().__init__(prefix + msg, witness=location)
        self.location = location


class DanglingSemiArc(DiagramError):
    headline = "Dangling semi-arc"


class DuplicateSlot(DiagramError):
    headline = "Semi-arc used twice"


class BadSign(DiagramError):
    headline = "Bad crossing sign"


class NotABiquandle(YBHException):
    headline = "Colorings need a biquandle"


# -- runner -----------------------------------------------------------------


class ResourceGuardExceeded(YBHException):
    headline = "Chain rank exceeds the resource guard"

    def __init__(self, msg: str, rank: int, degree: int) -> None:
        super().__init__(msg, witness=(degree, rank))
        self.rank = rank
        self.degree = degree
